//! A serializable summary of how a snapshot classifies.

use serde::{Deserialize, Serialize};

use crate::classify::{classify, ConfigClass, Snapshot};
use crate::error::Result;
use crate::geometry::Point;
use crate::targets::{target_assignment, walkers};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassReport {
    pub class: String,
    pub n: usize,
    pub sec_center: Point,
    pub sec_radius: f64,
    /// Angular period and classes, for sets without shared rays.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub period: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub analogy_classes: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub strong_analogy_classes: Vec<Vec<usize>>,
    /// Supporting polygon vertices of a Pre-regular set.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub polygon: Vec<Point>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub walkers: Vec<usize>,
    /// Target of each point, for Valid sets.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub targets: Vec<Point>,
}

pub fn class_report(s: &Snapshot) -> Result<ClassReport> {
    let class = classify(s)?;
    let mut r = ClassReport {
        class: class.name().into(),
        n: s.n(),
        sec_center: s.sec().center,
        sec_radius: s.sec().radius,
        period: None,
        analogy_classes: Vec::new(),
        strong_analogy_classes: Vec::new(),
        polygon: Vec::new(),
        walkers: Vec::new(),
        targets: Vec::new(),
    };
    if !matches!(class, ConfigClass::CoRadial | ConfigClass::Central) {
        let ring = s.ring();
        r.period = Some(ring.period());
        r.analogy_classes = ring.analogy_classes();
        r.strong_analogy_classes = ring.strong_analogy_classes();
    }
    match &class {
        ConfigClass::PreRegular(cert) => r.polygon = cert.polygon.clone(),
        ConfigClass::ValidReady | ConfigClass::ValidWaiting => {
            let t = target_assignment(s)?;
            r.targets = t.corr.iter().map(|&k| t.targets[k]).collect();
            if matches!(class, ConfigClass::ValidWaiting) {
                r.walkers = walkers(s)?;
            }
        }
        _ => {}
    }
    Ok(r)
}
