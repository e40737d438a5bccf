//! The concrete categories every suite runs against.

pub mod finrel;
pub mod finset;
pub mod matq;
pub mod zero;

use std::collections::BTreeSet;

use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub use finrel::{FinRel, Rel};
pub use finset::{FinSet, Func};
pub use matq::{Mat, MatQ, Q};
pub use zero::{Point, ZeroCat};

use crate::error::{Error, Result};
use crate::kernel::{Elem, Instance, Obj, ObjKind, Probe, Witness};
use crate::monoidal::Smc;

/// Random morphisms between finite objects, for naturality probes.
pub trait Sample: Instance {
    fn sample(&self, dom: &Obj, cod: &Obj, rng: &mut ChaCha8Rng) -> Result<Self::Mor>;
}

/// Instances whose hom-sets between finite objects can be listed.
pub trait Enumerable: Instance {
    fn all_maps(&self, dom: &Obj, cod: &Obj) -> Result<Vec<Self::Mor>>;
}

impl Enumerable for FinSet {
    fn all_maps(&self, dom: &Obj, cod: &Obj) -> Result<Vec<Func>> {
        self.all_functions(dom, cod)
    }
}

impl Enumerable for FinRel {
    fn all_maps(&self, dom: &Obj, cod: &Obj) -> Result<Vec<Rel>> {
        self.all_relations(dom, cod)
    }
}

/// One object of a registry manifest.
#[derive(Clone, Debug, Serialize)]
pub struct RegistryEntry {
    pub id: String,
    pub kind: ObjKind,
    pub base_carriers: Vec<String>,
    #[serde(skip)]
    pub obj: Obj,
}

/// Objects closed under ⊗ and ! up to a depth, with checked enumerators.
#[derive(Clone, Debug, Serialize)]
pub struct Registry {
    pub degree: usize,
    pub objects: Vec<RegistryEntry>,
}

#[derive(Clone, Copy, Debug)]
pub struct ClosureOps {
    pub tensor: bool,
    pub bang: bool,
}

fn base_names(o: &Obj, out: &mut BTreeSet<String>) {
    match o {
        Obj::Unit => {}
        Obj::Base(b) => {
            out.insert(format!(
                "{}={{{}}}",
                b.name,
                b.elems.iter().map(Elem::encode).collect::<Vec<_>>().join(",")
            ));
        }
        Obj::Tensor(a, b) | Obj::Hom(a, b) | Obj::Exp(a, b) => {
            base_names(a, out);
            base_names(b, out);
        }
        Obj::Bang(a) => base_names(a, out),
    }
}

/// All objects built from `base` by at most `depth` rounds of ⊗ and !.
/// Enumerates each object to `degree` and rejects the registry when the
/// total element count exceeds `budget`.
pub fn build_object_closure(
    base: &[Obj],
    ops: ClosureOps,
    depth: usize,
    degree: usize,
    budget: usize,
) -> Result<Registry> {
    let mut objs: BTreeSet<Obj> = base.iter().cloned().collect();
    let mut order: Vec<Obj> = base.to_vec();
    for _ in 0..depth {
        let current = order.clone();
        for a in &current {
            if ops.bang {
                let b = Obj::bang(a);
                if objs.insert(b.clone()) {
                    order.push(b);
                }
            }
            if ops.tensor {
                for c in &current {
                    let t = Obj::tensor(a, c);
                    if objs.insert(t.clone()) {
                        order.push(t);
                    }
                }
            }
        }
    }
    let mut total = 0usize;
    let mut entries = Vec::new();
    for o in order {
        total += o.elements_upto(degree, budget)?.len();
        if total > budget {
            return Err(Error::resource(
                format!("registry enumeration to degree {degree}"),
                budget,
            ));
        }
        let mut names = BTreeSet::new();
        base_names(&o, &mut names);
        entries.push(RegistryEntry {
            id: o.to_string(),
            kind: o.kind(),
            base_carriers: names.into_iter().collect(),
            obj: o,
        });
    }
    Ok(Registry {
        degree,
        objects: entries,
    })
}

impl Registry {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("registry serializes")
    }

    pub fn objects(&self) -> Vec<Obj> {
        self.objects.iter().map(|e| e.obj.clone()).collect()
    }
}

/// Searches every relation `h: C → A⊗B` for one whose two projections are
/// `f` and `g`. Returns a witness when none exists (so ⊗ is not a product).
pub fn finrel_pairing_counterexample(inst: &FinRel, f: &Rel, g: &Rel) -> Result<Option<Witness>> {
    use crate::kernel::Morphism;
    if f.dom() != g.dom() {
        return Err(Error::boundary(f.dom(), g.dom()));
    }
    let (c, a, b) = (f.dom().clone(), f.cod().clone(), g.cod().clone());
    let discard = |x: &Obj| -> Result<Rel> {
        let pairs: Vec<(Elem, Elem)> = x
            .finite_elements(inst.budget)?
            .into_iter()
            .map(|e| (e, Elem::Star))
            .collect();
        inst.from_pairs(x, &Obj::Unit, &pairs)
    };
    let p1 = inst.then(&inst.lwhisker(&a, &discard(&b)?)?, &inst.runit(&a)?)?;
    let p2 = inst.then(&inst.rwhisker(&discard(&a)?, &b)?, &inst.lunit(&b)?)?;
    let probe = Probe::exhaustive(0);
    let candidates = inst.all_relations(&c, &Obj::tensor(&a, &b))?;
    let n = candidates.len();
    for h in candidates {
        let ok1 = inst.compare(&inst.then(&h, &p1)?, f, &probe)?.is_none();
        let ok2 = ok1 && inst.compare(&inst.then(&h, &p2)?, g, &probe)?.is_none();
        if ok2 {
            return Ok(None);
        }
    }
    Ok(Some(Witness::new(
        format!("{} → {}⊗{}", c, a, b),
        format!("none of {n} candidate relations"),
        "a pairing",
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_depth_one() {
        let x = Obj::base("X", &["a"]);
        let reg = build_object_closure(
            std::slice::from_ref(&x),
            ClosureOps {
                tensor: true,
                bang: true,
            },
            1,
            3,
            1000,
        )
        .unwrap();
        let ids: Vec<&str> = reg.objects.iter().map(|e| e.id.as_str()).collect();
        assert_eq!(ids, vec!["X", "!X", "(X⊗X)"]);
    }

    #[test]
    fn closure_depth_zero_is_base() {
        let x = Obj::base("X", &["a", "b"]);
        let reg = build_object_closure(
            &[x],
            ClosureOps {
                tensor: true,
                bang: true,
            },
            0,
            3,
            1000,
        )
        .unwrap();
        assert_eq!(reg.objects.len(), 1);
    }

    #[test]
    fn closure_budget() {
        let x = Obj::base("X", &["a", "b", "c"]);
        let err = build_object_closure(
            &[x],
            ClosureOps {
                tensor: true,
                bang: true,
            },
            2,
            6,
            500,
        )
        .unwrap_err();
        assert!(err.is_resource());
    }
}
