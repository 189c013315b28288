mod common;

use common::{element, field, form, point, raw_element, raw_form, FIELDS};
use proptest::prelude::*;
use triplepoint::{FieldElement, HomForm, Var};

fn var_strategy() -> impl Strategy<Value = Var> {
    prop::sample::select(Var::ALL.to_vec())
}

proptest! {
    #[test]
    fn partial_derivatives_commute(fi in 0..FIELDS, d in 0u32..=6, f in raw_form(), u in var_strategy(), v in var_strategy()) {
        let k = field(fi);
        let f = form(&k, d, &f);
        prop_assert_eq!(f.diff(u).diff(v), f.diff(v).diff(u));
    }

    #[test]
    fn euler_identity(fi in 0..FIELDS, d in 1u32..=7, f in raw_form()) {
        let k = field(fi);
        let f = form(&k, d, &f);
        let mut sum = HomForm::zero(&k, d);
        for v in Var::ALL {
            sum = sum.checked_add(&HomForm::var(&k, v).checked_mul(&f.diff(v)).unwrap()).unwrap();
        }
        prop_assert_eq!(sum, f.scale(&FieldElement::from_int(&k, d as i64)));
    }

    #[test]
    fn evaluation_is_multiplicative_and_additive(
        fi in 0..FIELDS,
        d in 0u32..=4,
        e in 0u32..=4,
        f in raw_form(),
        g in raw_form(),
        h in raw_form(),
        p in [raw_element(), raw_element(), raw_element()],
    ) {
        let k = field(fi);
        let Some(p) = point(&k, &p) else { return Ok(()) };
        let (f, g, h) = (form(&k, d, &f), form(&k, e, &g), form(&k, d, &h));
        prop_assert_eq!(f.checked_mul(&g).unwrap().eval(&p).unwrap(), &f.eval(&p).unwrap() * &g.eval(&p).unwrap());
        prop_assert_eq!(f.checked_add(&h).unwrap().eval(&p).unwrap(), &f.eval(&p).unwrap() + &h.eval(&p).unwrap());
    }

    #[test]
    fn evaluation_scales_with_the_degree(fi in 0..FIELDS, d in 0u32..=5, f in raw_form(), p in [raw_element(), raw_element(), raw_element()], s in raw_element()) {
        let k = field(fi);
        let s = element(&k, &s);
        let Some(p) = point(&k, &p) else { return Ok(()) };
        let f = form(&k, d, &f);
        let coords = p.coords();
        let scaled = [&coords[0] * &s, &coords[1] * &s, &coords[2] * &s];
        prop_assert_eq!(f.eval_coords(&scaled).unwrap(), &s.pow(d as u64) * &f.eval(&p).unwrap());
    }

    #[test]
    fn product_rule(fi in 0..FIELDS, d in 1u32..=4, e in 1u32..=4, f in raw_form(), g in raw_form(), v in var_strategy()) {
        let k = field(fi);
        let (f, g) = (form(&k, d, &f), form(&k, e, &g));
        let lhs = f.checked_mul(&g).unwrap().diff(v);
        let rhs = f.diff(v).checked_mul(&g).unwrap().checked_add(&f.checked_mul(&g.diff(v)).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
