//! Compute functions the simulator can drive.

use crate::algorithm::{cautious_destination, critical_points, decide_for, Decision, MoveDir};
use crate::classify::{classify, Snapshot};
use crate::error::Result;
use crate::geometry::{Point, TolerancePolicy};

/// A Compute function. It sees one snapshot in the observer's local frame
/// (observer at the origin) and nothing else.
pub trait Protocol {
    fn compute(&self, snapshot: &[Point], me: usize) -> Result<Decision>;
}

impl<F> Protocol for F
where
    F: Fn(&[Point], usize) -> Result<Decision>,
{
    fn compute(&self, snapshot: &[Point], me: usize) -> Result<Decision> {
        self(snapshot, me)
    }
}

/// The uniform circle formation algorithm.
#[derive(Clone, Copy, Debug, Default)]
pub struct Ucf {
    pub tol: TolerancePolicy,
}

impl Protocol for Ucf {
    fn compute(&self, snapshot: &[Point], me: usize) -> Result<Decision> {
        decide_for(snapshot, me, self.tol)
    }
}

/// A bare cautious radial move of a fixed group of robots, for exercising the
/// freeze guarantee in isolation. With `with_critical` off the movers ignore
/// critical points and head straight for the endpoint.
#[derive(Clone, Debug)]
pub struct CautiousHarness {
    pub movers: Vec<usize>,
    pub dir: MoveDir,
    pub with_critical: bool,
    pub tol: TolerancePolicy,
}

impl Protocol for CautiousHarness {
    fn compute(&self, snapshot: &[Point], me: usize) -> Result<Decision> {
        let s = Snapshot::new(snapshot.to_vec(), self.tol)?;
        let critical = if self.with_critical {
            critical_points(&s, &self.movers, self.dir).points
        } else {
            Vec::new()
        };
        let destination = cautious_destination(&s, me, &self.movers, &critical, self.dir);
        let class = classify(&s).map(|c| c.name()).unwrap_or("Unclassified");
        Ok(Decision { destination, class: class.into(), procedure: "CautiousMove".into(), critical })
    }
}
