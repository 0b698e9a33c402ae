use serde::{Deserialize, Serialize};

use super::{
    appendix_b_extension, bac_extension, physical_z_extension, variable_basis_z_extension,
    BinaryAsymmetricParams, VacuumExtension,
};
use crate::error::{Error, Result};
use crate::numerics::{c64, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChannelKind {
    Z,
    Bac,
    VariableZ,
    AppendixB,
}

/// JSON description of a single link channel.
///
/// ```json
/// {"kind": "variable_z", "p": 0.3, "eta": [[0.8, 0.0], [0.6, 0.0]]}
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelSpec {
    pub kind: ChannelKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<[[f64; 2]; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<[[f64; 2]; 2]>,
}

fn pair(v: [[f64; 2]; 2]) -> [C64; 2] {
    [c64(v[0][0], v[0][1]), c64(v[1][0], v[1][1])]
}

impl ChannelSpec {
    pub fn z(p: f64) -> Self {
        Self {
            kind: ChannelKind::Z,
            p: Some(p),
            q: None,
            eta: None,
            alpha: None,
        }
    }

    pub fn bac(q: f64, p: f64) -> Self {
        Self {
            kind: ChannelKind::Bac,
            q: Some(q),
            ..Self::z(p)
        }
    }

    fn require_p(&self) -> Result<f64> {
        self.p
            .ok_or_else(|| Error::InvalidConfig(format!("channel kind {:?} needs \"p\"", self.kind)))
    }

    pub fn build(&self) -> Result<VacuumExtension> {
        match self.kind {
            ChannelKind::Z => physical_z_extension(self.require_p()?),
            ChannelKind::Bac => bac_extension(BinaryAsymmetricParams::new(
                self.q.unwrap_or(0.0),
                self.require_p()?,
            )?),
            ChannelKind::VariableZ => {
                let eta = self
                    .eta
                    .ok_or_else(|| Error::InvalidConfig("variable_z needs \"eta\"".into()))?;
                variable_basis_z_extension(self.require_p()?, &pair(eta))
            }
            ChannelKind::AppendixB => {
                if let Some(p) = self.p {
                    if p != 1.0 {
                        return Err(Error::InvalidConfig(format!(
                            "appendix_b is the p = 1 Z-channel, got p = {p}"
                        )));
                    }
                }
                let alpha = self
                    .alpha
                    .ok_or_else(|| Error::InvalidConfig("appendix_b needs \"alpha\"".into()))?;
                let [a0, a1] = pair(alpha);
                appendix_b_extension(a0, a1)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_kind() {
        let z: ChannelSpec = serde_json::from_str(r#"{"kind": "z", "p": 0.5}"#).unwrap();
        assert_eq!(z, ChannelSpec::z(0.5));
        assert_eq!(z.build().unwrap().channel().len(), 4);

        let bac: ChannelSpec = serde_json::from_str(r#"{"kind": "bac", "p": 0.5, "q": 0.2}"#).unwrap();
        assert!((bac.build().unwrap().sigma_max() - 0.8).abs() < 1e-12);

        let vz: ChannelSpec = serde_json::from_str(
            r#"{"kind": "variable_z", "p": 0.3, "eta": [[0.8, 0.0], [0.0, 0.6]]}"#,
        )
        .unwrap();
        assert!((vz.build().unwrap().sigma_max() - 1.0).abs() < 1e-12);

        let ab: ChannelSpec = serde_json::from_str(
            r#"{"kind": "appendix_b", "p": 1.0, "alpha": [[0.6, 0.0], [0.8, 0.0]]}"#,
        )
        .unwrap();
        assert_eq!(ab.build().unwrap().channel().len(), 2);
    }

    #[test]
    fn missing_fields_are_config_errors() {
        let spec: ChannelSpec = serde_json::from_str(r#"{"kind": "variable_z", "p": 0.3}"#).unwrap();
        assert!(matches!(spec.build(), Err(Error::InvalidConfig(_))));
        let spec: ChannelSpec = serde_json::from_str(r#"{"kind": "z"}"#).unwrap();
        assert!(matches!(spec.build(), Err(Error::InvalidConfig(_))));
        assert!(serde_json::from_str::<ChannelSpec>(r#"{"kind": "erasure", "p": 0.1}"#).is_err());
    }
}
