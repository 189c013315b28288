//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Each exported function has a plain Rust counterpart returning
//! `Result<String, String>` so the logic can be tested natively.

use wasm_bindgen::prelude::*;

use triplepoint::arrangement::FieldMode;
use triplepoint::dataset::{parse_dataset, Dataset};
use triplepoint::pipeline::{
    render_hilbert_text, render_text, run_hilbert, run_verify, VerifyOptions,
};
use triplepoint::render::{render_svg, RenderOptions};

fn select(dataset: &str, n: usize) -> Result<Dataset, String> {
    let n = (dataset == "fp-even").then_some(n);
    parse_dataset(dataset, n, None::<FieldMode>).map_err(|e| e.to_string())
}

/// SVG of the polygon arrangement on `n` lines. `lines` is a comma separated
/// list of line indices to draw; empty means all of them.
pub fn polygon_svg(n: usize, lines: &str, show_ordinary: bool) -> Result<String, String> {
    let loaded = select("fp-even", n)?.load().map_err(|e| e.to_string())?;
    let all = loaded.arr.lines();
    let drawn = if lines.trim().is_empty() {
        all.to_vec()
    } else {
        lines
            .split(',')
            .map(|s| {
                let i: usize = s
                    .trim()
                    .parse()
                    .map_err(|_| format!("bad line index {s:?}"))?;
                all.get(i)
                    .cloned()
                    .ok_or_else(|| format!("no line {i}; indices run from 0 to {}", all.len() - 1))
            })
            .collect::<Result<Vec<_>, String>>()?
    };
    let opts = RenderOptions {
        show_ordinary,
        ..RenderOptions::default()
    };
    render_svg(&drawn, &opts)
        .map(|r| r.svg)
        .map_err(|e| e.to_string())
}

/// Hilbert table of the points with multiplicity `m`, as text.
pub fn hilbert_text(dataset: &str, n: usize, m: u32, max_degree: u32) -> Result<String, String> {
    let h = run_hilbert(&select(dataset, n)?, m, max_degree).map_err(|e| e.to_string())?;
    Ok(render_hilbert_text(&h))
}

/// Full verification report for `I^(m) ⊆ I^r`, as text.
pub fn verify_text(dataset: &str, n: usize, m: u32, r: u32) -> Result<String, String> {
    let opts = VerifyOptions {
        m,
        r,
        max_degree: None,
    };
    let (report, _) = run_verify(&select(dataset, n)?, &opts).map_err(|e| e.to_string())?;
    Ok(render_text(&report))
}

#[wasm_bindgen(js_name = polygonSvg)]
pub fn polygon_svg_js(n: usize, lines: &str, show_ordinary: bool) -> Result<String, JsError> {
    polygon_svg(n, lines, show_ordinary).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = hilbertTable)]
pub fn hilbert_table_js(
    dataset: &str,
    n: usize,
    m: u32,
    max_degree: u32,
) -> Result<String, JsError> {
    hilbert_text(dataset, n, m, max_degree).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = verify)]
pub fn verify_js(dataset: &str, n: usize, m: u32, r: u32) -> Result<String, JsError> {
    verify_text(dataset, n, m, r).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn svg_for_subsets() {
        let all = polygon_svg(12, "", false).unwrap();
        assert!(all.starts_with("<?xml"));
        assert_eq!(all.matches("<line ").count(), 12);
        let some = polygon_svg(12, "0, 1,2", true).unwrap();
        assert_eq!(some.matches("<line ").count(), 3);
        assert!(polygon_svg(12, "12", false)
            .unwrap_err()
            .contains("no line 12"));
        assert!(polygon_svg(12, "a", false).is_err());
        assert!(polygon_svg(7, "", false).is_err());
    }

    #[test]
    fn hilbert_and_verify() {
        let h = hilbert_text("coordinate-points", 0, 1, 3).unwrap();
        assert!(h.contains('7'));
        let v = verify_text("coordinate-points", 0, 2, 2).unwrap();
        assert!(v.contains("x*y*z") || v.contains("xyz"), "{v}");
        assert!(verify_text("nope", 0, 3, 2).is_err());
    }
}
