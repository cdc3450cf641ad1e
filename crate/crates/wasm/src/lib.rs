//! Browser bindings for the demo page in `www/`. Each export takes plain
//! arguments and returns a JSON string; errors come back as JS strings.
//!
//! The `*_json` functions carry the logic and are callable natively, which
//! is how they are tested.

use feec_core::expr::format_form;
use feec_core::json::{FormJson, PairingJson};
use feec_core::ops::{self, Applied, Operator};
use feec_core::pairing::{duality_spaces, pairing_matrix, PairingCheck};
use feec_core::{FormSpace, SpaceKind};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest `n` the page accepts; beyond it the pairings take seconds.
pub const MAX_DEMO_N: usize = 3;
pub const MAX_DEMO_R: u32 = 4;

fn check_size(n: usize, r: u32) -> Result<(), String> {
    if n == 0 || n > MAX_DEMO_N {
        return Err(format!("the demo supports 1 <= n <= {MAX_DEMO_N}"));
    }
    if r > MAX_DEMO_R {
        return Err(format!("the demo supports r <= {MAX_DEMO_R}"));
    }
    Ok(())
}

/// `{"text": "...", "form": FormJson}` for `op` applied to `expr`.
pub fn apply_operator_json(op: &str, n: usize, r: Option<u32>, expr: &str) -> Result<String, String> {
    check_size(n, r.unwrap_or(0))?;
    let op: Operator = op.parse().map_err(|e: feec_core::Error| e.to_string())?;
    let out = ops::apply(op, n, r, expr).map_err(|e| e.to_string())?;
    let form = match &out {
        Applied::Orthant(f) => FormJson::from_form(f),
        Applied::Simplex(a) => FormJson::from_tform(a),
    };
    Ok(json!({ "text": out.to_string(), "form": form }).to_string())
}

fn dim_or_null(n: usize, r: u32, k: usize, kind: SpaceKind) -> Value {
    FormSpace::build(n, r, k, kind).map_or(Value::Null, |s| json!(s.dim()))
}

/// Rows `{r, k, H, P, Pminus, ringH, ringP, ringPminus}` for `r <= max_r`,
/// `k <= n + 1`; undefined entries are `null`.
pub fn space_dimensions_json(n: usize, max_r: u32) -> Result<String, String> {
    check_size(n, max_r)?;
    let mut rows = Vec::new();
    for r in 0..=max_r {
        for k in 0..=n + 1 {
            let mut row = serde_json::Map::new();
            row.insert("r".into(), json!(r));
            row.insert("k".into(), json!(k));
            for kind in SpaceKind::ALL {
                row.insert(kind.as_str().into(), dim_or_null(n, r, k, kind));
            }
            rows.push(Value::Object(row));
        }
    }
    Ok(json!({ "n": n, "rows": rows }).to_string())
}

/// Pairing matrix between the two spaces of a duality statement, with both
/// bases printed.
pub fn duality_report_json(n: usize, r: u32, k: usize, family: &str) -> Result<String, String> {
    check_size(n, r)?;
    let family: SpaceKind = family.parse().map_err(|e: feec_core::Error| e.to_string())?;
    let (rows, cols) = duality_spaces(n, r, k, family).map_err(|e| e.to_string())?;
    let m = pairing_matrix(&rows, &cols).map_err(|e| e.to_string())?;
    let check = PairingCheck::from_matrix(&m);
    let basis = |s: &FormSpace| -> Vec<String> { s.basis().iter().map(format_form).collect() };
    Ok(json!({
        "report": PairingJson::from_check(&check, Some(&m.entries)),
        "row_basis": basis(&rows),
        "col_basis": basis(&cols),
    })
    .to_string())
}

/// `r < 0` means "not given".
#[wasm_bindgen]
pub fn apply_operator(op: &str, n: usize, r: i32, expr: &str) -> Result<String, JsValue> {
    let r = u32::try_from(r).ok();
    apply_operator_json(op, n, r, expr).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn space_dimensions(n: usize, max_r: u32) -> Result<String, JsValue> {
    space_dimensions_json(n, max_r).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn duality_report(n: usize, r: u32, k: usize, family: &str) -> Result<String, JsValue> {
    duality_report_json(n, r, k, family).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Value {
        serde_json::from_str(text).unwrap()
    }

    #[test]
    fn apply_returns_text_and_form() {
        let v = parse(&apply_operator_json("hr", 2, Some(1), "y*dx").unwrap());
        assert_eq!(v["text"], "y*dx - (x*y/s)*ds");
        assert_eq!(v["form"]["ambient_dim"], 3);
        let v = parse(&apply_operator_json("restrict", 2, None, "s*dx - x*ds").unwrap());
        assert_eq!(v["text"], "dx");
        assert_eq!(v["form"]["simplex"], true);
        assert!(apply_operator_json("hr", 2, None, "y*dx").is_err());
        assert!(apply_operator_json("d", 2, None, "q").unwrap_err().contains("unknown variable"));
        assert!(apply_operator_json("d", 9, None, "x").is_err());
    }

    #[test]
    fn dimension_table() {
        let v = parse(&space_dimensions_json(2, 1).unwrap());
        let rows = v["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 2 * 4);
        let r1k1 = rows.iter().find(|row| row["r"] == 1 && row["k"] == 1).unwrap();
        assert_eq!(r1k1["Pminus"], 3);
        assert_eq!(r1k1["P"], 6);
        let r0k1 = rows.iter().find(|row| row["r"] == 0 && row["k"] == 1).unwrap();
        assert!(r0k1["Pminus"].is_null());
    }

    #[test]
    fn duality_matrix() {
        let v = parse(&duality_report_json(2, 1, 1, "Pminus").unwrap());
        assert_eq!(v["report"]["rows"], 3);
        assert_eq!(v["report"]["nondegenerate"], true);
        assert_eq!(v["report"]["entries"].as_array().unwrap().len(), 3);
        assert_eq!(v["row_basis"].as_array().unwrap().len(), 3);
        assert!(duality_report_json(2, 1, 3, "P").is_err());
        assert!(duality_report_json(2, 1, 1, "Q").is_err());
    }
}
