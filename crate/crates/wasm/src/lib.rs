//! Browser bindings: PD code in, JSON report out. The static page in `web/`
//! renders the three operations (homology table, spectral sequence pages,
//! branched cover invariants) interactively.
//!
//! The exported functions are thin wrappers over host-testable `imp`
//! functions; JsValue only exists in a JS environment.

use wasm_bindgen::prelude::*;

mod imp {
    use khoflow_core::corpus::Corpus;
    use khoflow_core::diagram::LinkDiagram;
    use khoflow_core::khovanov;
    use khoflow_core::report::{DetReport, DiagramJson, KhReport, SsReport};
    use khoflow_core::specseq;

    fn err(e: impl std::fmt::Display) -> String {
        e.to_string()
    }

    fn parse(pd: &str) -> Result<LinkDiagram, String> {
        LinkDiagram::parse_pd(pd).map_err(err)
    }

    pub fn corpus_names() -> String {
        let names: Vec<String> = Corpus::bundled().names().map(String::from).collect();
        serde_json::to_string(&names).expect("serialize names")
    }

    pub fn corpus_pd(name: &str) -> Result<String, String> {
        Ok(Corpus::bundled().pd_code(name).map_err(err)?.to_string())
    }

    pub fn diagram_info(pd: &str) -> Result<String, String> {
        let d = parse(pd)?;
        let (np, nm) = d.crossing_signs();
        let value = serde_json::json!({
            "diagram": DiagramJson::from(&d),
            "n_plus": np,
            "n_minus": nm,
            "components": d.n_components(),
        });
        Ok(value.to_string())
    }

    pub fn diagram_homology(pd: &str, reduced: bool) -> Result<String, String> {
        let d = parse(pd)?;
        let dims = if reduced {
            khovanov::khr_homology(&d).map_err(err)?
        } else {
            khovanov::kh_homology(&d).map_err(err)?
        };
        serde_json::to_string(&KhReport::new("pd", reduced, &dims)).map_err(err)
    }

    pub fn spectral_pages(pd: &str, max_page: i32) -> Result<String, String> {
        let d = parse(pd)?;
        let cube = khovanov::build_cube(&d).map_err(err)?;
        let fc = specseq::from_cube(&cube, true);
        serde_json::to_string(&SsReport::new("pd", true, &fc, max_page).map_err(err)?).map_err(err)
    }

    pub fn branched_invariants(pd: &str) -> Result<String, String> {
        let d = parse(pd)?;
        serde_json::to_string(&DetReport::new("pd", &d).map_err(err)?).map_err(err)
    }
}

fn js<T>(r: Result<T, String>) -> Result<T, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

/// JSON array of the bundled corpus names.
#[wasm_bindgen]
pub fn corpus_names() -> String {
    imp::corpus_names()
}

/// PD code of a bundled corpus diagram.
#[wasm_bindgen]
pub fn corpus_pd(name: &str) -> Result<String, JsValue> {
    js(imp::corpus_pd(name))
}

/// Parsed diagram summary: crossings, signs, components.
#[wasm_bindgen]
pub fn diagram_info(pd: &str) -> Result<String, JsValue> {
    js(imp::diagram_info(pd))
}

/// Khovanov homology table (reduced or unreduced) as a KhReport.
#[wasm_bindgen]
pub fn diagram_homology(pd: &str, reduced: bool) -> Result<String, JsValue> {
    js(imp::diagram_homology(pd, reduced))
}

/// Spectral sequence page dims of the weight-filtered cube, pages 1..=max.
#[wasm_bindgen]
pub fn spectral_pages(pd: &str, max_page: i32) -> Result<String, JsValue> {
    js(imp::spectral_pages(pd, max_page))
}

/// Determinant and H1 of the double branched cover as a DetReport.
#[wasm_bindgen]
pub fn branched_invariants(pd: &str) -> Result<String, JsValue> {
    js(imp::branched_invariants(pd))
}
