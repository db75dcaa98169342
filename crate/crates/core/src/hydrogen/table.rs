use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::dipole::{Axis, PhasedScalar};
use super::orbital::Orbital;
use super::radial::gordon_radial_integral;
use crate::error::Result;
use crate::exact::{format_rational, ExactScalar, Rational};

/// Every `<n',l',m'| r_axis |n,l,m>` between two levels, zeros included.
#[derive(Clone, Debug)]
pub struct DipoleTable {
    pub from_level: u32,
    pub to_level: u32,
    /// Keyed by `(source, axis, target)`.
    pub entries: BTreeMap<(Orbital, Axis, Orbital), PhasedScalar>,
}

impl DipoleTable {
    pub fn build(from_level: u32, to_level: u32) -> Result<Self> {
        let sources = Orbital::level(from_level)?;
        let targets = Orbital::level(to_level)?;
        // one radial integral per (l, l') pair
        let mut radials: BTreeMap<(u32, u32), ExactScalar> = BTreeMap::new();
        let mut entries = BTreeMap::new();
        for source in &sources {
            for axis in Axis::ALL {
                for target in &targets {
                    let angular = super::dipole::angular_element(target, axis, source);
                    let value = if angular.is_zero() {
                        angular
                    } else {
                        let key = (source.l(), target.l());
                        let radial = match radials.get(&key) {
                            Some(r) => r.clone(),
                            None => {
                                let r = gordon_radial_integral(
                                    from_level,
                                    source.l(),
                                    to_level,
                                    target.l(),
                                )?;
                                radials.insert(key, r.clone());
                                r
                            }
                        };
                        angular.scale(&radial)
                    };
                    entries.insert((*source, axis, *target), value);
                }
            }
        }
        Ok(Self {
            from_level,
            to_level,
            entries,
        })
    }

    pub fn get(&self, source: &Orbital, axis: Axis, target: &Orbital) -> Option<&PhasedScalar> {
        self.entries.get(&(*source, axis, *target))
    }

    pub fn to_json(&self, with_float: bool) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|((source, axis, target), v)| {
                let mut entry = json!({
                    "source": source.to_string(),
                    "axis": axis.name(),
                    "target": target.to_string(),
                    "value": phased_to_json(v),
                });
                if with_float {
                    entry["float"] = json!(format_float(v.value.to_f64()));
                }
                entry
            })
            .collect();
        json!({
            "from_level": self.from_level,
            "to_level": self.to_level,
            "phase_convention": "Condon-Shortley",
            "length_unit": "half Bohr radius",
            "entries": entries,
        })
    }
}

pub fn scalar_to_json(s: &ExactScalar) -> Value {
    Value::Array(
        s.terms()
            .map(|(c, r)| {
                json!({
                    "coeff": format_rational(c),
                    "radicand": format_rational(&Rational::from_integer(r.clone().into())),
                })
            })
            .collect(),
    )
}

pub fn phased_to_json(v: &PhasedScalar) -> Value {
    json!({ "terms": scalar_to_json(&v.value), "phase": v.phase.symbol() })
}

/// Fifteen significant digits in scientific notation.
pub fn format_float(x: f64) -> String {
    format!("{x:.14e}")
}
