//! Key-value config files describing group models.
//!
//! ```text
//! model = "bolza"
//! ```
//! ```text
//! model = "fn"
//! fn.lengths = [2.0, 2.0, 2.0]
//! fn.twists  = [0.0, 0.0, 0.0]
//! ```
//! ```text
//! model = "explicit"
//! explicit.matrices = [[a, b, c, d], ...]
//! ```

use super::group::{GroupError, GroupSpec};
use serde::Deserialize;

#[derive(Debug, Deserialize)]
struct RawConfig {
    model: String,
    #[serde(rename = "fn")]
    fenchel: Option<RawFn>,
    explicit: Option<RawExplicit>,
}

#[derive(Debug, Deserialize)]
struct RawFn {
    lengths: Vec<f64>,
    #[serde(default)]
    twists: Vec<f64>,
}

#[derive(Debug, Deserialize)]
struct RawExplicit {
    matrices: Vec<[f64; 4]>,
}

/// Parse a group spec from the key-value config text.
pub fn parse_group_config(text: &str) -> Result<GroupSpec, GroupError> {
    let raw: RawConfig = toml::from_str(text)
        .map_err(|e| GroupError::InvalidParameter(format!("config parse error: {e}")))?;
    match raw.model.as_str() {
        "bolza" => Ok(GroupSpec::Bolza),
        "fn" => {
            let f = raw
                .fenchel
                .ok_or_else(|| GroupError::InvalidParameter("missing [fn] section".into()))?;
            if f.lengths.len() != 3 {
                return Err(GroupError::InvalidParameter(format!(
                    "fn.lengths needs 3 entries, got {}",
                    f.lengths.len()
                )));
            }
            let mut twists = [0.0; 3];
            for (i, t) in f.twists.iter().take(3).enumerate() {
                twists[i] = *t;
            }
            Ok(GroupSpec::FenchelNielsen {
                lengths: [f.lengths[0], f.lengths[1], f.lengths[2]],
                twists,
            })
        }
        "explicit" => {
            let e = raw
                .explicit
                .ok_or_else(|| GroupError::InvalidParameter("missing [explicit] section".into()))?;
            Ok(GroupSpec::Explicit {
                matrices: e.matrices,
            })
        }
        other => Err(GroupError::InvalidParameter(format!(
            "unknown model '{other}', expected bolza | fn | explicit"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_bolza() {
        assert_eq!(parse_group_config("model = \"bolza\"").unwrap(), GroupSpec::Bolza);
    }

    #[test]
    fn parses_fn() {
        let text = "model = \"fn\"\nfn.lengths = [2.0, 2.5, 3.0]\nfn.twists = [0.1, 0.0, -0.4]\n";
        match parse_group_config(text).unwrap() {
            GroupSpec::FenchelNielsen { lengths, twists } => {
                assert_eq!(lengths, [2.0, 2.5, 3.0]);
                assert_eq!(twists, [0.1, 0.0, -0.4]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_unknown_model() {
        assert!(parse_group_config("model = \"torus\"").is_err());
    }
}
