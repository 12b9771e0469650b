//! Serializable report types shared by the CLI and the browser demo.
//! Field order is fixed and tables are sorted, so identical inputs produce
//! byte-identical JSON.

use crate::branched;
use crate::diagram::LinkDiagram;
use crate::hmr::{self, HmrModel, ModelKind, TriangleCheck};
use crate::khovanov::BigradedDims;
use crate::specseq::{FilteredComplex, PageTable};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
pub struct DiagramJson {
    pub crossings: Vec<[i32; 4]>,
    pub n_unknotted: usize,
    pub basepoint: i32,
}

impl From<&LinkDiagram> for DiagramJson {
    fn from(d: &LinkDiagram) -> Self {
        DiagramJson {
            crossings: d.tuples().to_vec(),
            n_unknotted: d.n_unknotted(),
            basepoint: d.basepoint(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct KhReport {
    pub schema: u32,
    pub diagram: String,
    pub reduced: bool,
    /// Rows [h, q, dim] sorted by (h, q).
    pub table: Vec<(i32, i32, usize)>,
    pub total_dim: usize,
}

impl KhReport {
    pub fn new(diagram: impl Into<String>, reduced: bool, dims: &BigradedDims) -> Self {
        KhReport {
            schema: SCHEMA_VERSION,
            diagram: diagram.into(),
            reduced,
            table: dims.table(),
            total_dim: dims.total_dim(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct DetReport {
    pub schema: u32,
    pub diagram: String,
    pub det: u64,
    pub h1_invariant_factors: Vec<u64>,
    pub b1: usize,
}

impl DetReport {
    pub fn new(name: impl Into<String>, d: &LinkDiagram) -> Result<Self, branched::BranchedError> {
        let factors = branched::h1_double_cover(d)?;
        let det = branched::determinant(d)?;
        let b1 = factors.iter().filter(|&&f| f == 0).count();
        Ok(DetReport {
            schema: SCHEMA_VERSION,
            diagram: name.into(),
            det,
            h1_invariant_factors: factors,
            b1,
        })
    }
}

#[derive(Debug, Serialize)]
pub struct PageDims {
    pub r: i32,
    /// Rows [weight, dim] sorted by weight.
    pub dims: Vec<(i32, usize)>,
    pub total: usize,
}

impl From<&PageTable> for PageDims {
    fn from(p: &PageTable) -> Self {
        PageDims {
            r: p.r,
            dims: p.dims.iter().map(|(&w, &d)| (w, d)).collect(),
            total: p.total_dim(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SsReport {
    pub schema: u32,
    pub diagram: String,
    pub reduced: bool,
    pub pages: Vec<PageDims>,
    pub e_infinity_total: usize,
}

impl SsReport {
    pub fn new(
        name: impl Into<String>,
        reduced: bool,
        fc: &FilteredComplex,
        up_to_page: i32,
    ) -> Result<Self, crate::specseq::SpecSeqError> {
        if up_to_page < 1 {
            return Err(crate::specseq::SpecSeqError::InvalidPage(up_to_page));
        }
        let mut pages = Vec::new();
        for r in 1..=up_to_page {
            pages.push(PageDims::from(&fc.page(r)?));
        }
        Ok(SsReport {
            schema: SCHEMA_VERSION,
            diagram: name.into(),
            reduced,
            pages,
            e_infinity_total: fc.e_infinity().total_dim(),
        })
    }
}

#[derive(Debug, Serialize)]
pub struct HmrReport {
    pub schema: u32,
    pub model: String,
    /// Rows [grading, dim] sorted by grading.
    pub dims_by_grading: Vec<(i32, usize)>,
    pub total_dim: usize,
    pub abs_chi: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_spinc: Option<Vec<usize>>,
}

impl HmrReport {
    pub fn new(model: &HmrModel, cutoff: Option<i64>) -> Result<Self, hmr::HmrError> {
        let n = cutoff.unwrap_or_else(|| model.default_cutoff());
        let dims = hmr::cone_homology(&model.mapping_cone(n)?);
        let per_spinc = match model.kind() {
            ModelKind::TwoBridge(d) => {
                let single = hmr::model_library("torus_odd").expect("library model");
                let dim = hmr::total_dim(&single.cone_homology_default());
                Some(vec![dim; *d as usize])
            }
            _ => None,
        };
        Ok(HmrReport {
            schema: SCHEMA_VERSION,
            model: model.name().to_string(),
            dims_by_grading: dims.iter().map(|(&g, &d)| (g, d)).collect(),
            total_dim: hmr::total_dim(&dims),
            abs_chi: hmr::abs_chi(&dims),
            per_spinc,
        })
    }
}

#[derive(Debug, Serialize)]
pub struct TriangleReport {
    pub dims: (u64, u64, u64),
    pub pass: bool,
    pub violations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ranks: Option<(u64, u64, u64)>,
}

impl From<&TriangleCheck> for TriangleReport {
    fn from(t: &TriangleCheck) -> Self {
        TriangleReport {
            dims: t.dims,
            pass: t.pass,
            violations: t.violations.clone(),
            ranks: t.ranks,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SkeinReport {
    pub schema: u32,
    pub diagram: String,
    pub crossing: usize,
    /// Determinants of (K2, K1, K0).
    pub dets: [u64; 3],
    pub components: [usize; 3],
    pub triangle: TriangleReport,
}

/// Model file schema: `{"irreducibles": [["name", gr]], "towers": k,
/// "upsilon_extra": [["src", "dst"]], "tower_gradings": [g0, ...]}`.
/// Sources and targets name an irreducible, or `a0` (tower 0) / `a0.t`.
#[derive(Debug, Deserialize)]
pub struct ModelFile {
    #[serde(default)]
    pub irreducibles: Vec<(String, i32)>,
    #[serde(default)]
    pub towers: usize,
    #[serde(default)]
    pub tower_gradings: Option<Vec<i32>>,
    #[serde(default)]
    pub upsilon_extra: Vec<(String, String)>,
    #[serde(default)]
    pub differential: Vec<(String, String)>,
}

impl ModelFile {
    pub fn into_model(self, name: &str) -> Result<HmrModel, hmr::HmrError> {
        use crate::hmr::GenRef;
        let tower_gradings = match self.tower_gradings {
            Some(g) => {
                if g.len() != self.towers && self.towers != 0 {
                    return Err(hmr::HmrError::BadModel(
                        "tower_gradings length disagrees with towers".into(),
                    ));
                }
                g
            }
            None => vec![0; self.towers],
        };
        let resolve = |s: &str| -> Result<GenRef, hmr::HmrError> {
            if let Some(rest) = s.strip_prefix("a0") {
                let t = if rest.is_empty() {
                    0
                } else {
                    rest.strip_prefix('.')
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| hmr::HmrError::BadModel(format!("bad generator `{s}`")))?
                };
                return Ok(GenRef::TowerBottom(t));
            }
            self.irreducibles
                .iter()
                .position(|(n, _)| n == s)
                .map(GenRef::Irr)
                .ok_or_else(|| hmr::HmrError::BadModel(format!("unknown generator `{s}`")))
        };
        let upsilon = self
            .upsilon_extra
            .iter()
            .map(|(s, d)| Ok((resolve(s)?, resolve(d)?)))
            .collect::<Result<Vec<_>, hmr::HmrError>>()?;
        let irr_index = |s: &str| -> Result<usize, hmr::HmrError> {
            self.irreducibles
                .iter()
                .position(|(n, _)| n == s)
                .ok_or_else(|| hmr::HmrError::BadModel(format!("unknown irreducible `{s}`")))
        };
        let differential = self
            .differential
            .iter()
            .map(|(s, d)| Ok((irr_index(s)?, irr_index(d)?)))
            .collect::<Result<Vec<_>, hmr::HmrError>>()?;
        HmrModel::new(name, self.irreducibles, tower_gradings, upsilon, differential)
    }
}
