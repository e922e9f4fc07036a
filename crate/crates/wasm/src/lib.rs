//! Browser bindings: a thin JSON facade over the core library for the
//! static demo page in `www/`.

use wasm_bindgen::prelude::*;

use tlk_core::algebra::{
    abelian_invariants, builtin_target, builtin_target_names, count_colorings, twisted_group,
    twisted_quandle, TargetKind,
};
use tlk_core::cover::double_cover;
use tlk_core::gauss::TwistedCode;
use tlk_core::ribbon::{abstract_diagram, surface_invariants};

fn err(message: impl std::fmt::Display) -> String {
    serde_json::json!({ "error": message.to_string() }).to_string()
}

/// Parse a code and report its statistics and the surface invariants of
/// its ribbon diagram.
#[wasm_bindgen]
pub fn analyze(code: &str) -> String {
    let code = match TwistedCode::parse(code) {
        Ok(c) => c,
        Err(e) => return err(e),
    };
    let stats = code.stats();
    let surface = surface_invariants(&abstract_diagram(&code));
    serde_json::json!({
        "code": code.serialize(),
        "stats": stats,
        "surface": surface,
    })
    .to_string()
}

/// The double covering diagram and its statistics.
#[wasm_bindgen]
pub fn cover(code: &str) -> String {
    let code = match TwistedCode::parse(code) {
        Ok(c) => c,
        Err(e) => return err(e),
    };
    let result = double_cover(&code);
    serde_json::json!({
        "cover": result.cover.serialize(),
        "stats": result.cover.stats(),
        "sheet_map": result.sheet_map,
    })
    .to_string()
}

/// Coloring counts of the twisted group/quandle into every built-in
/// target, plus the abelian invariants.
#[wasm_bindgen]
pub fn invariants(code: &str) -> String {
    let code = match TwistedCode::parse(code) {
        Ok(c) => c,
        Err(e) => return err(e),
    };
    let group = twisted_group(&code);
    let quandle = twisted_quandle(&code);
    let mut counts = serde_json::Map::new();
    for name in builtin_target_names() {
        let t = builtin_target(name).unwrap();
        let p = match t.kind {
            TargetKind::Group => &group,
            TargetKind::Quandle => &quandle,
        };
        let key = format!(
            "{}:{name}",
            match t.kind {
                TargetKind::Group => "group",
                TargetKind::Quandle => "quandle",
            }
        );
        match count_colorings(p, &t) {
            Ok(n) => counts.insert(key, n.into()),
            Err(e) => counts.insert(key, serde_json::Value::String(e.to_string())),
        };
    }
    let abelian = abelian_invariants(&group).unwrap();
    serde_json::json!({
        "counts": counts,
        "abelian": abelian,
    })
    .to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analyze_reports_stats_and_surface() {
        let v: serde_json::Value = serde_json::from_str(&analyze("(O1+ U1+ *)")).unwrap();
        assert_eq!(v["stats"]["crossing_count"], 1);
        assert_eq!(v["surface"]["pieces"][0]["orientable"], false);
        let bad: serde_json::Value = serde_json::from_str(&analyze("(O1+")).unwrap();
        assert!(bad["error"].is_string());
    }

    #[test]
    fn cover_of_bar_unknot_is_unknot() {
        let v: serde_json::Value = serde_json::from_str(&cover("(*)")).unwrap();
        assert_eq!(v["cover"], "()");
    }

    #[test]
    fn invariants_include_all_builtin_targets() {
        let v: serde_json::Value = serde_json::from_str(&invariants("(*)")).unwrap();
        assert_eq!(v["counts"]["group:S3"], 6);
        assert_eq!(v["counts"]["quandle:R3"], 3);
        assert_eq!(v["abelian"]["free_rank"], 1);
        assert_eq!(v["counts"].as_object().unwrap().len(), builtin_target_names().len());
    }
}
