//! JSON form of a cone: `{"d", "inequalities", "equalities"}` or
//! `{"d", "generators", "lineality"}`. Entries are integers or `"p/q"` strings.

use serde_json::{json, Map, Value};

use super::Cone;
use crate::error::{ConicError, Result};
use crate::exactlin::rational::{matrix_from_json, matrix_to_json, RVector};

fn rows(obj: &Map<String, Value>, key: &str) -> Result<Vec<RVector>> {
    obj.get(key).map(matrix_from_json).transpose().map(Option::unwrap_or_default)
}

impl Cone {
    pub fn from_json(v: &Value) -> Result<Cone> {
        let obj = v
            .as_object()
            .ok_or_else(|| ConicError::Parse("cone must be a JSON object".into()))?;
        let d = obj
            .get("d")
            .and_then(Value::as_u64)
            .ok_or_else(|| ConicError::Parse("cone needs a nonnegative integer \"d\"".into()))? as usize;
        let h = obj.contains_key("inequalities") || obj.contains_key("equalities");
        let v = obj.contains_key("generators") || obj.contains_key("lineality");
        match (h, v) {
            (true, false) => Cone::from_h(&rows(obj, "inequalities")?, &rows(obj, "equalities")?, d),
            (false, true) => Cone::from_generators(&rows(obj, "generators")?, &rows(obj, "lineality")?, d),
            (true, true) => Err(ConicError::input("give exactly one of the H- and V-representations")),
            (false, false) => Err(ConicError::input(
                "cone needs \"inequalities\"/\"equalities\" or \"generators\"/\"lineality\"",
            )),
        }
    }

    pub fn from_json_str(s: &str) -> Result<Cone> {
        Cone::from_json(&serde_json::from_str(s)?)
    }

    /// Both representations, with derived sizes.
    pub fn to_json(&self) -> Value {
        json!({
            "d": self.d,
            "dim": self.dim(),
            "lineality_dim": self.lineality_dim(),
            "inequalities": matrix_to_json(&self.inequalities),
            "equalities": matrix_to_json(self.equalities.basis_rows()),
            "generators": matrix_to_json(&self.generators),
            "lineality": matrix_to_json(self.lineality.basis_rows()),
        })
    }

    /// Only the H-representation, in the input format.
    pub fn to_h_json(&self) -> Value {
        json!({
            "d": self.d,
            "inequalities": matrix_to_json(&self.inequalities),
            "equalities": matrix_to_json(self.equalities.basis_rows()),
        })
    }

    /// Only the V-representation, in the input format.
    pub fn to_v_json(&self) -> Value {
        json!({
            "d": self.d,
            "generators": matrix_to_json(&self.generators),
            "lineality": matrix_to_json(self.lineality.basis_rows()),
        })
    }

    /// Re-serializes in whichever representation `v` used.
    pub fn to_json_like(&self, v: &Value) -> Value {
        if v.get("generators").is_some() || v.get("lineality").is_some() {
            self.to_v_json()
        } else {
            self.to_h_json()
        }
    }
}
