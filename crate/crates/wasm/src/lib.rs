//! Browser bindings for the zigzag-decomposition engine.
//!
//! Three entry points back the demo page: building a named model complex,
//! analyzing a pasted complex document, and multiplying classes in the
//! Grothendieck ring. Each returns a JSON string so the page stays a thin
//! static shell; all of them also compile and run natively, which is how
//! this crate is unit tested.

use serde::Serialize;
use wasm_bindgen::prelude::wasm_bindgen;

use bicomplex::doc::{ComplexDocument, MultsDocument};
use bicomplex::models;
use bicomplex::multiplicity::multiplicities;
use bicomplex::render;
use bicomplex::ring::{normal_form, Level, RingClass};
use bicomplex::sample::{random_complex, SampleConfig};
use bicomplex::spectral;
use bicomplex::{DoubleComplex, FieldSpec, SsSide};

#[derive(Serialize)]
struct Report {
    field: String,
    total_dim: usize,
    mults: Vec<(String, usize)>,
    betti: Vec<(i32, usize)>,
    bott_chern: Vec<((i32, i32), usize)>,
    aeppli: Vec<((i32, i32), usize)>,
    dolbeault1: Vec<((i32, i32), usize)>,
    dolbeault2: Vec<((i32, i32), usize)>,
    delta: Vec<(i32, i64)>,
    ddbar: bool,
    degeneration_stage: u32,
    ascii: String,
    svg: String,
    document: String,
}

#[derive(Serialize)]
struct Failure {
    error: String,
}

fn fail(message: impl std::fmt::Display) -> String {
    serde_json::to_string(&Failure {
        error: message.to_string(),
    })
    .unwrap()
}

fn report(a: &DoubleComplex) -> bicomplex::Result<String> {
    let m = multiplicities(a)?;
    let betti = spectral::de_rham(a)?;
    let bc_ae = spectral::bott_chern_aeppli(a)?;
    let predicates = spectral::predicates(a)?;
    let delta = spectral::delta_degrees(a)?;
    let out = Report {
        field: a.field().label(),
        total_dim: a.total_dim(),
        mults: m.iter().map(|(s, c)| (s.to_string(), c)).collect(),
        betti: betti.iter().map(|(&k, (d, _))| (k, *d)).collect(),
        bott_chern: bc_ae
            .iter()
            .filter(|(_, v)| v.0 > 0)
            .map(|(&k, v)| (k, v.0))
            .collect(),
        aeppli: bc_ae
            .iter()
            .filter(|(_, v)| v.1 > 0)
            .map(|(&k, v)| (k, v.1))
            .collect(),
        dolbeault1: spectral::dolbeault(a, SsSide::One)?.into_iter().collect(),
        dolbeault2: spectral::dolbeault(a, SsSide::Two)?.into_iter().collect(),
        delta: delta.into_iter().collect(),
        ddbar: predicates.ddbar,
        degeneration_stage: predicates.degeneration_stage,
        ascii: render::ascii_of_complex(a, Some(&m)),
        svg: render::render_svg(&m),
        document: ComplexDocument::from_complex(a).to_json(),
    };
    Ok(serde_json::to_string(&out).unwrap())
}

/// Builds one of the named model complexes and reports every table.
///
/// Kinds: `hopf`, `calabi-eckmann` (a = u, b = v), `h9`,
/// `projective-space` (a = n), `surface` (a = genus), `random` (a = seed).
#[wasm_bindgen]
pub fn model_report(kind: &str, a: u32, b: u32) -> String {
    let complex = match kind {
        "hopf" => Ok(models::hopf_model()),
        "calabi-eckmann" => models::calabi_eckmann_model(a, b),
        "h9" => Ok(models::h9_complex()),
        "projective-space" => {
            let table = (0..=a as i32).map(|i| ((i, i), 1)).collect();
            Ok(models::hodge_complex(&table, FieldSpec::Rationals))
        }
        "surface" => {
            let g = a as usize;
            let table = [((0, 0), 1), ((1, 0), g), ((0, 1), g), ((1, 1), 1)]
                .into_iter()
                .filter(|&(_, d)| d > 0)
                .collect();
            Ok(models::hodge_complex(&table, FieldSpec::Rationals))
        }
        "random" => {
            let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(a as u64);
            let cfg = SampleConfig {
                width: 4,
                height: 4,
                max_dim: 2,
                draws: 6,
            };
            let field = bicomplex::sample::field_cycle(b as usize);
            Ok(random_complex(&mut rng, field, &cfg).0)
        }
        other => Err(bicomplex::Error::InvalidArgument(format!(
            "unknown model `{other}`"
        ))),
    };
    match complex.and_then(|c| report(&c)) {
        Ok(json) => json,
        Err(e) => fail(e),
    }
}

/// Parses a complex document; returns either the full report or the list
/// of failed identities.
#[wasm_bindgen]
pub fn analyze_document(json: &str) -> String {
    let parsed = ComplexDocument::from_json(json).and_then(|doc| doc.to_complex());
    let a = match parsed {
        Ok(a) => a,
        Err(e) => return fail(e),
    };
    let violations = a.validate();
    if !violations.is_empty() {
        let lines: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        return fail(lines.join("; "));
    }
    report(&a).unwrap_or_else(fail)
}

#[derive(Serialize)]
struct RingReport {
    level: String,
    class: String,
    normal_form: Option<String>,
    first_quadrant: bool,
    mults_document: String,
}

/// Multiplies two class expressions in the chosen ring level.
#[wasm_bindgen]
pub fn ring_product(a: &str, b: &str, level: &str) -> String {
    let result = (|| -> bicomplex::Result<String> {
        let level: Level = level.parse()?;
        let x = RingClass::parse(a, level)?;
        let product = if b.trim().is_empty() {
            x
        } else {
            x.mul(&RingClass::parse(b, level)?)?
        };
        let nf = if level == Level::R0 {
            None
        } else {
            Some(normal_form(&product)?)
        };
        // Nonnegative classes can be handed back as a multiplicity document
        // for the renderer.
        let mults_document = {
            let mut m = bicomplex::MultiplicityVector::new();
            let mut representable = true;
            for (s, c) in product.terms() {
                if c < 0 {
                    representable = false;
                    break;
                }
                m.add(*s, c as usize);
            }
            if representable {
                MultsDocument::from_mults(&m).to_json()
            } else {
                String::new()
            }
        };
        Ok(serde_json::to_string(&RingReport {
            level: level.to_string(),
            class: product.to_string(),
            normal_form: nf.map(|n| n.to_string()),
            first_quadrant: product.is_first_quadrant(),
            mults_document,
        })
        .unwrap())
    })();
    result.unwrap_or_else(fail)
}

/// SVG diagram of a multiplicity document (as produced by `ring_product`
/// or the CLI).
#[wasm_bindgen]
pub fn mults_svg(json: &str) -> String {
    match MultsDocument::from_json(json).and_then(|d| d.to_mults()) {
        Ok(m) => render::render_svg(&m),
        Err(e) => fail(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_reports_are_json() {
        for (kind, a, b) in [
            ("hopf", 0, 0),
            ("calabi-eckmann", 1, 2),
            ("h9", 0, 0),
            ("projective-space", 2, 0),
            ("surface", 3, 0),
            ("random", 7, 1),
        ] {
            let out = model_report(kind, a, b);
            let v: serde_json::Value = serde_json::from_str(&out).unwrap();
            assert!(v.get("error").is_none(), "{kind}: {out}");
            assert!(v["svg"].as_str().unwrap().starts_with("<svg"), "{kind}");
            assert!(v["total_dim"].as_u64().unwrap() > 0, "{kind}");
        }
        let bad = model_report("unknown", 0, 0);
        assert!(bad.contains("error"));
        let bad = model_report("calabi-eckmann", 2, 2);
        assert!(bad.contains("error"), "u = v rejected");
    }

    #[test]
    fn hopf_report_contents() {
        let out = model_report("hopf", 0, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["total_dim"], 8);
        assert_eq!(v["mults"].as_array().unwrap().len(), 4);
        assert_eq!(v["ddbar"], false);
        assert_eq!(v["degeneration_stage"], 1);
        let delta: Vec<(i32, i64)> = serde_json::from_value(v["delta"].clone()).unwrap();
        assert!(delta.contains(&(2, 2)));
    }

    #[test]
    fn analyze_round_trips_the_document() {
        let out = model_report("hopf", 0, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let doc = v["document"].as_str().unwrap();
        let again = analyze_document(doc);
        let v2: serde_json::Value = serde_json::from_str(&again).unwrap();
        assert_eq!(v["mults"], v2["mults"]);

        let bad = analyze_document("{\"field\": \"Q\", \"components\": []}");
        let v3: serde_json::Value = serde_json::from_str(&bad).unwrap();
        assert!(v3.get("error").is_none() || v3["error"].is_string());
    }

    #[test]
    fn analyze_reports_violations() {
        let doc = r#"{
            "field": "Q",
            "components": [{"p": 0, "q": 0, "dim": 1}, {"p": 1, "q": 0, "dim": 1}],
            "d1": [{"p": 0, "q": 0, "matrix": [["1"], ["1"]]}]
        }"#;
        let out = analyze_document(doc);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!(v["error"].as_str().unwrap().contains("(0, 0)"));
    }

    #[test]
    fn ring_product_reports() {
        let out = ring_product("S_{1,1}^{0,0}", "S_{2,1}^{0,0}", "r1");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["class"], "0");

        let out = ring_product("S_1^{0,1}", "S_1^{1,0}", "rinf");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["class"], "S_2^{1,1}");
        assert_eq!(v["normal_form"], "R·U");
        let svg = mults_svg(v["mults_document"].as_str().unwrap());
        assert!(svg.starts_with("<svg"));

        let out = ring_product("S^{1,1}", "", "r1");
        assert!(out.contains("error"));
    }
}
