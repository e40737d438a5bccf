//! Morphism-level engine shared by every instance: objects, elements,
//! degree-bounded equality and the diagram checker.

pub mod elem;
pub mod obj;
pub mod report;

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::Instant;

pub use elem::{bags, Elem};
pub use obj::{BaseSet, Obj, ObjKind};
pub use report::{DiagramResult, Status, SuiteResult, Witness};

use crate::error::{Error, Result};

/// Default number of elements any single enumeration may produce.
pub const DEFAULT_BUDGET: usize = 200_000;

/// Degree treated as "no bound"; bound arithmetic saturates here.
pub const INF: usize = 1 << 40;

pub type BoundFn = Arc<dyn Fn(usize) -> usize + Send + Sync>;
pub type ElemMap = Arc<dyn Fn(&Elem) -> Elem + Send + Sync>;

/// Degree bookkeeping for graded morphisms.
///
/// `forward(d)` bounds the degree of every output of an input of degree ≤ d
/// (`None`: image-infinite). `inverse(c)` bounds the degree of every input
/// having some output of degree ≤ c.
#[derive(Clone)]
pub struct Bounds {
    pub forward: Option<BoundFn>,
    pub inverse: BoundFn,
}

impl Bounds {
    pub fn new(
        forward: Option<impl Fn(usize) -> usize + Send + Sync + 'static>,
        inverse: impl Fn(usize) -> usize + Send + Sync + 'static,
    ) -> Bounds {
        Bounds {
            forward: forward.map(|f| Arc::new(f) as BoundFn),
            inverse: Arc::new(inverse),
        }
    }

    /// Output degree equals input degree.
    pub fn preserving() -> Bounds {
        Bounds::new(Some(|d| d), |c| c)
    }

    /// Output degree is input degree plus `k`.
    pub fn shift(k: usize) -> Bounds {
        Bounds::new(Some(move |d: usize| d.saturating_add(k).min(INF)), |c| c)
    }

    /// All outputs have degree ≤ `out_max`; all related inputs degree ≤ `in_max`.
    pub fn constant(out_max: usize, in_max: usize) -> Bounds {
        Bounds::new(Some(move |_| out_max), move |_| in_max)
    }

    /// Image-infinite map whose related inputs have degree ≤ `inverse(c)`.
    pub fn unbounded(inverse: impl Fn(usize) -> usize + Send + Sync + 'static) -> Bounds {
        Bounds {
            forward: None,
            inverse: Arc::new(inverse),
        }
    }

    pub fn forward_at(&self, d: usize) -> Option<usize> {
        self.forward.as_ref().map(|f| f(d))
    }

    pub fn inverse_at(&self, c: usize) -> usize {
        (self.inverse)(c)
    }

    /// Bounds of `f;g`.
    pub fn then(&self, g: &Bounds) -> Bounds {
        let forward = match (&self.forward, &g.forward) {
            (Some(a), Some(b)) => {
                let (a, b) = (a.clone(), b.clone());
                Some(Arc::new(move |d| b(a(d))) as BoundFn)
            }
            _ => None,
        };
        let (ia, ib) = (self.inverse.clone(), g.inverse.clone());
        Bounds {
            forward,
            inverse: Arc::new(move |c| ia(ib(c))),
        }
    }

    /// Bounds of `f⊗g`.
    pub fn tensor(&self, g: &Bounds) -> Bounds {
        let forward = match (&self.forward, &g.forward) {
            (Some(a), Some(b)) => {
                let (a, b) = (a.clone(), b.clone());
                Some(Arc::new(move |d: usize| {
                    if d >= INF {
                        return INF;
                    }
                    (0..=d)
                        .map(|k| a(k).saturating_add(b(d - k)))
                        .max()
                        .unwrap_or(0)
                        .min(INF)
                }) as BoundFn)
            }
            _ => None,
        };
        let (ia, ib) = (self.inverse.clone(), g.inverse.clone());
        Bounds {
            forward,
            inverse: Arc::new(move |c: usize| {
                if c >= INF {
                    return INF;
                }
                (0..=c)
                    .map(|k| ia(k).saturating_add(ib(c - k)))
                    .max()
                    .unwrap_or(0)
                    .min(INF)
            }),
        }
    }

    /// Bounds of the pointwise bag extension `!f`.
    pub fn bang(&self) -> Bounds {
        let forward = self.forward.clone().map(|a| {
            Arc::new(move |d: usize| {
                if d >= INF {
                    return INF;
                }
                (0..=d)
                    .map(|n| n.saturating_add(spread(&*a, n, d - n)))
                    .max()
                    .unwrap_or(0)
                    .min(INF)
            }) as BoundFn
        });
        let ib = self.inverse.clone();
        Bounds {
            forward,
            inverse: Arc::new(move |c: usize| {
                if c >= INF {
                    return INF;
                }
                (0..=c)
                    .map(|n| n.saturating_add(spread(&*ib, n, c - n)))
                    .max()
                    .unwrap_or(0)
                    .min(INF)
            }),
        }
    }

    /// Bounds of a union of two maps with the same boundary.
    pub fn join(&self, g: &Bounds) -> Bounds {
        let forward = match (&self.forward, &g.forward) {
            (Some(a), Some(b)) => {
                let (a, b) = (a.clone(), b.clone());
                Some(Arc::new(move |d| a(d).max(b(d))) as BoundFn)
            }
            _ => None,
        };
        let (ia, ib) = (self.inverse.clone(), g.inverse.clone());
        Bounds {
            forward,
            inverse: Arc::new(move |c| ia(c).max(ib(c))),
        }
    }
}

/// max Σ_{i<n} f(k_i) over k_1 + … + k_n ≤ total.
fn spread(f: &(dyn Fn(usize) -> usize + Send + Sync), n: usize, total: usize) -> usize {
    if n == 0 {
        return 0;
    }
    // best[t] = max over one-more-slot distributions using at most t
    let mut best: Vec<usize> = (0..=total).map(f).collect();
    for t in 1..=total {
        best[t] = best[t].max(best[t - 1]);
    }
    for _ in 1..n {
        let mut next = vec![0; total + 1];
        for t in 0..=total {
            next[t] = (0..=t).map(|k| f(k).saturating_add(best[t - k])).max().unwrap_or(0);
        }
        best = next;
    }
    best[total]
}

/// How equality of two parallel morphisms is probed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Probe {
    /// Inputs of degree ≤ `degree` are compared exhaustively on graded instances.
    pub degree: usize,
    /// For linear instances: compare on this many seeded random vectors instead
    /// of every basis column.
    pub samples: Option<usize>,
    pub seed: u64,
}

impl Probe {
    pub fn exhaustive(degree: usize) -> Probe {
        Probe {
            degree,
            samples: None,
            seed: 0,
        }
    }

    pub fn random(degree: usize, samples: usize, seed: u64) -> Probe {
        Probe {
            degree,
            samples: Some(samples),
            seed,
        }
    }
}

/// Access to the boundary of a morphism value.
pub trait Morphism: Clone + Send + Sync + 'static {
    fn dom(&self) -> &Obj;
    fn cod(&self) -> &Obj;
}

/// A concrete symmetric monoidal instance category.
///
/// Structural maps are built generically from element functions via
/// [`Instance::from_fn`]; payload-specific work (composition, tensor,
/// equality) is supplied per instance.
pub trait Instance: Send + Sync + 'static {
    type Mor: Morphism;

    fn name(&self) -> &'static str;
    fn budget(&self) -> usize;

    fn id(&self, a: &Obj) -> Result<Self::Mor>;
    /// Diagrammatic order: first `f`, then `g`.
    fn compose(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor>;
    fn tensor(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor>;

    /// The morphism induced by an element-level function (a bijection of
    /// carriers, a group operation, ...).
    fn from_fn(&self, dom: &Obj, cod: &Obj, f: ElemMap, bounds: Bounds) -> Result<Self::Mor>;

    /// The morphism whose graph is the given finite list of pairs.
    fn from_pairs(&self, dom: &Obj, cod: &Obj, pairs: &[(Elem, Elem)]) -> Result<Self::Mor>;

    /// `None` when equal under the probe, otherwise the first witness.
    fn compare(&self, f: &Self::Mor, g: &Self::Mor, probe: &Probe) -> Result<Option<Witness>>;

    /// Literal equality of the underlying payload values.
    fn payload_eq(&self, f: &Self::Mor, g: &Self::Mor) -> bool;

    /// `f` carrying declared degree bounds tighter than the ones derived
    /// from its construction. Ungraded instances return `f` unchanged.
    fn with_bounds(&self, f: &Self::Mor, _bounds: Bounds) -> Self::Mor {
        f.clone()
    }

    /// First probed input at which `f` breaks `bounds`, if any.
    fn bounds_violation(&self, _f: &Self::Mor, _bounds: &Bounds, _probe: &Probe) -> Result<Option<Witness>> {
        Ok(None)
    }

    fn check_parallel(&self, f: &Self::Mor, g: &Self::Mor) -> Result<()> {
        if f.dom() != g.dom() {
            return Err(Error::boundary(f.dom(), g.dom()));
        }
        if f.cod() != g.cod() {
            return Err(Error::boundary(f.cod(), g.cod()));
        }
        Ok(())
    }
}

/// Shorthand for [`Instance::compose`] over a whole path.
pub fn compose_path<I: Instance + ?Sized>(inst: &I, path: &[I::Mor]) -> Result<I::Mor> {
    let (first, rest) = path
        .split_first()
        .ok_or_else(|| Error::Invalid("empty composite path".into()))?;
    let mut acc = first.clone();
    for g in rest {
        acc = inst.compose(&acc, g)?;
    }
    Ok(acc)
}

/// Degree-bounded equality with the first witness on failure.
pub fn morph_eq_to_degree<I: Instance>(inst: &I, f: &I::Mor, g: &I::Mor, d: usize) -> Result<(bool, Option<Witness>)> {
    let w = inst.compare(f, g, &Probe::exhaustive(d))?;
    Ok((w.is_none(), w))
}

/// Two composable paths claimed to agree.
pub struct DiagramSpec<M> {
    pub name: String,
    pub anchor: String,
    pub lhs: Vec<M>,
    pub rhs: Vec<M>,
    pub probe: Probe,
}

/// Folds both paths and compares them under the diagram's probe.
pub fn check_diagram<I: Instance>(inst: &I, spec: &DiagramSpec<I::Mor>) -> DiagramResult {
    let outcome = compose_path(inst, &spec.lhs).and_then(|l| {
        let r = compose_path(inst, &spec.rhs)?;
        inst.check_parallel(&l, &r)?;
        inst.compare(&l, &r, &spec.probe)
    });
    DiagramResult::from_outcome(&spec.name, &spec.anchor, outcome)
}

static TIMINGS: AtomicBool = AtomicBool::new(false);

/// Process-wide default for [`Checker::timings`]. Off by default so that
/// reports are reproducible byte for byte.
pub fn set_default_timings(on: bool) {
    TIMINGS.store(on, Ordering::Relaxed);
}

/// Accumulates diagram results for one suite.
pub struct Checker<'a, I: Instance> {
    pub inst: &'a I,
    pub probe: Probe,
    pub timings: bool,
    results: Vec<DiagramResult>,
}

impl<'a, I: Instance> Checker<'a, I> {
    pub fn new(inst: &'a I, probe: Probe) -> Self {
        Checker {
            inst,
            probe,
            timings: TIMINGS.load(Ordering::Relaxed),
            results: Vec::new(),
        }
    }

    pub fn with_timings(mut self, on: bool) -> Self {
        self.timings = on;
        self
    }

    /// Checks that two composite paths agree. Construction errors become
    /// failures (or resource-exceeded) carrying the error text as witness.
    pub fn paths(
        &mut self,
        name: impl Into<String>,
        anchor: &str,
        build: impl FnOnce() -> Result<(Vec<I::Mor>, Vec<I::Mor>)>,
    ) -> Status {
        let start = Instant::now();
        let name = name.into();
        let res = match build() {
            Ok((lhs, rhs)) => check_diagram(
                self.inst,
                &DiagramSpec {
                    name: name.clone(),
                    anchor: anchor.to_string(),
                    lhs,
                    rhs,
                    probe: self.probe,
                },
            ),
            Err(e) => DiagramResult::from_outcome(&name, anchor, Err(e)),
        };
        self.push(res, start)
    }

    /// Checks that two morphisms agree.
    pub fn equal(
        &mut self,
        name: impl Into<String>,
        anchor: &str,
        build: impl FnOnce() -> Result<(I::Mor, I::Mor)>,
    ) -> Status {
        self.paths(name, anchor, || build().map(|(l, r)| (vec![l], vec![r])))
    }

    /// Records a custom check: `Ok(None)` passes, `Ok(Some(w))` fails with `w`.
    pub fn fact(
        &mut self,
        name: impl Into<String>,
        anchor: &str,
        check: impl FnOnce() -> Result<Option<Witness>>,
    ) -> Status {
        let start = Instant::now();
        let res = DiagramResult::from_outcome(&name.into(), anchor, check());
        self.push(res, start)
    }

    /// Records a precomputed result.
    pub fn record(&mut self, res: DiagramResult) {
        self.results.push(res);
    }

    fn push(&mut self, mut res: DiagramResult, start: Instant) -> Status {
        if self.timings {
            res.millis = start.elapsed().as_millis() as u64;
        }
        let s = res.status;
        self.results.push(res);
        s
    }

    pub fn results(&self) -> &[DiagramResult] {
        &self.results
    }

    pub fn finish(self, name: &str, anchor: &str) -> SuiteResult {
        SuiteResult::new(name, anchor, self.results)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spread_matches_brute_force() {
        let f = |k: usize| 2 * k + 1;
        // n slots, total 3: best is all budget in one slot plus the constants
        assert_eq!(spread(&f, 2, 3), 2 * 3 + 2);
        assert_eq!(spread(&f, 0, 3), 0);
    }

    #[test]
    fn bang_bounds_of_counit() {
        // ε: [x] ↦ x; related inputs of an output of degree ≤ c have degree ≤ c + 1
        let eps = Bounds::new(Some(|d: usize| d.saturating_sub(1)), |c| c + 1);
        let b = eps.bang();
        // n singletons [x_i] each contributing 1 + deg; total ≤ 2c
        assert_eq!(b.inverse_at(3), 6);
    }
}
