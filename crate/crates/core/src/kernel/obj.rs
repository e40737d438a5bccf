use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::elem::Elem;
use crate::error::{Error, Result};

/// A named finite base carrier.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct BaseSet {
    pub name: String,
    /// Sorted, duplicate free.
    pub elems: Vec<Elem>,
}

/// Object expressions shared by every instance.
///
/// Carriers are graded by [`Elem::degree`]; objects without `Bang` inside
/// are finite and live entirely in degree 0.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Obj {
    Unit,
    Base(Arc<BaseSet>),
    Tensor(Arc<Obj>, Arc<Obj>),
    Bang(Arc<Obj>),
    /// Internal hom whose elements are pairs (relations, matrices).
    Hom(Arc<Obj>, Arc<Obj>),
    /// Internal hom whose elements are function tables (sets).
    Exp(Arc<Obj>, Arc<Obj>),
}

/// Kind tag used in manifests.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ObjKind {
    Finite,
    Graded,
}

impl Obj {
    /// A base set with the given element names.
    pub fn base(name: &str, elems: &[&str]) -> Obj {
        Obj::base_of(name, elems.iter().map(|e| Elem::atom(e)).collect())
    }

    pub fn base_of(name: &str, mut elems: Vec<Elem>) -> Obj {
        elems.sort();
        elems.dedup();
        Obj::Base(Arc::new(BaseSet {
            name: name.to_string(),
            elems,
        }))
    }

    pub fn tensor(a: &Obj, b: &Obj) -> Obj {
        Obj::Tensor(Arc::new(a.clone()), Arc::new(b.clone()))
    }

    pub fn bang(a: &Obj) -> Obj {
        Obj::Bang(Arc::new(a.clone()))
    }

    pub fn hom(a: &Obj, b: &Obj) -> Obj {
        Obj::Hom(Arc::new(a.clone()), Arc::new(b.clone()))
    }

    pub fn exp(a: &Obj, b: &Obj) -> Obj {
        Obj::Exp(Arc::new(a.clone()), Arc::new(b.clone()))
    }

    pub fn is_finite(&self) -> bool {
        match self {
            Obj::Unit | Obj::Base(_) => true,
            Obj::Tensor(a, b) | Obj::Hom(a, b) | Obj::Exp(a, b) => a.is_finite() && b.is_finite(),
            Obj::Bang(_) => false,
        }
    }

    pub fn kind(&self) -> ObjKind {
        if self.is_finite() {
            ObjKind::Finite
        } else {
            ObjKind::Graded
        }
    }

    pub fn tensor_parts(&self) -> Option<(&Obj, &Obj)> {
        match self {
            Obj::Tensor(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn bang_inner(&self) -> Option<&Obj> {
        match self {
            Obj::Bang(a) => Some(a),
            _ => None,
        }
    }

    /// Elements of exactly degree `d`, in canonical order.
    pub fn elements_of_degree(&self, d: usize, budget: usize) -> Result<Vec<Elem>> {
        let out = match self {
            Obj::Unit => {
                if d == 0 {
                    vec![Elem::Star]
                } else {
                    vec![]
                }
            }
            Obj::Base(b) => {
                if d == 0 {
                    b.elems.clone()
                } else {
                    vec![]
                }
            }
            Obj::Tensor(a, b) | Obj::Hom(a, b) => {
                let mut out = Vec::new();
                for k in 0..=d {
                    let xs = a.elements_of_degree(k, budget)?;
                    if xs.is_empty() {
                        continue;
                    }
                    let ys = b.elements_of_degree(d - k, budget)?;
                    if xs.len().saturating_mul(ys.len()) + out.len() > budget {
                        return Err(Error::resource(format!("elements of {self} at degree {d}"), budget));
                    }
                    for x in &xs {
                        for y in &ys {
                            out.push(Elem::pair(x.clone(), y.clone()));
                        }
                    }
                }
                out.sort();
                out
            }
            Obj::Exp(a, b) => {
                if !a.is_finite() || !b.is_finite() {
                    return Err(Error::Unsupported(format!(
                        "function-table hom {self} over a graded object"
                    )));
                }
                if d > 0 {
                    vec![]
                } else {
                    let xs = a.elements_of_degree(0, budget)?;
                    let ys = b.elements_of_degree(0, budget)?;
                    let count = (ys.len() as f64).powi(xs.len() as i32);
                    if count > budget as f64 {
                        return Err(Error::resource(format!("elements of {self}"), budget));
                    }
                    let mut out = vec![Vec::new()];
                    for _ in &xs {
                        let mut next = Vec::with_capacity(out.len() * ys.len());
                        for prefix in &out {
                            for y in &ys {
                                let mut p: Vec<Elem> = prefix.clone();
                                p.push(y.clone());
                                next.push(p);
                            }
                        }
                        out = next;
                    }
                    let mut out: Vec<Elem> = out.into_iter().map(Elem::Fun).collect();
                    out.sort();
                    out
                }
            }
            Obj::Bang(a) => {
                // items weighted by 1 + degree; pick nondecreasing index sequences of total weight d
                let mut items: Vec<(Elem, usize)> = Vec::new();
                for k in 0..d {
                    for x in a.elements_of_degree(k, budget)? {
                        items.push((x, k + 1));
                    }
                }
                let mut out = Vec::new();
                let mut acc = Vec::new();
                bag_fill(&items, 0, d, &mut acc, &mut out, budget, self)?;
                out.sort();
                out
            }
        };
        if out.len() > budget {
            return Err(Error::resource(format!("elements of {self} at degree {d}"), budget));
        }
        Ok(out)
    }

    /// Elements of degree ≤ `d`, ordered by degree and then canonically.
    pub fn elements_upto(&self, d: usize, budget: usize) -> Result<Vec<Elem>> {
        let top = if self.is_finite() { 0 } else { d };
        let mut out = Vec::new();
        for k in 0..=top {
            out.extend(self.elements_of_degree(k, budget)?);
            if out.len() > budget {
                return Err(Error::resource(format!("elements of {self} up to degree {d}"), budget));
            }
        }
        Ok(out)
    }

    /// Finite carriers only: all elements.
    pub fn finite_elements(&self, budget: usize) -> Result<Vec<Elem>> {
        if !self.is_finite() {
            return Err(Error::Unsupported(format!("{self} is graded, not finite")));
        }
        self.elements_of_degree(0, budget)
    }
}

fn bag_fill(
    items: &[(Elem, usize)],
    start: usize,
    remaining: usize,
    acc: &mut Vec<Elem>,
    out: &mut Vec<Elem>,
    budget: usize,
    obj: &Obj,
) -> Result<()> {
    if remaining == 0 {
        out.push(Elem::bag(acc.clone()));
        if out.len() > budget {
            return Err(Error::resource(format!("elements of {obj}"), budget));
        }
        return Ok(());
    }
    for i in start..items.len() {
        let (x, w) = &items[i];
        if *w <= remaining {
            acc.push(x.clone());
            bag_fill(items, i, remaining - w, acc, out, budget, obj)?;
            acc.pop();
        }
    }
    Ok(())
}

impl fmt::Display for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obj::Unit => write!(f, "K"),
            Obj::Base(b) => write!(f, "{}", b.name),
            Obj::Tensor(a, b) => write!(f, "({a}⊗{b})"),
            Obj::Bang(a) => write!(f, "!{a}"),
            Obj::Hom(a, b) => write!(f, "({a}⊸{b})"),
            Obj::Exp(a, b) => write!(f, "({a}⇒{b})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BUDGET: usize = 200_000;

    #[test]
    fn bang_of_singleton_has_one_bag_per_degree() {
        let x = Obj::base("X", &["a"]);
        let bx = Obj::bang(&x);
        for d in 0..5 {
            assert_eq!(bx.elements_of_degree(d, BUDGET).unwrap().len(), 1);
        }
    }

    #[test]
    fn bang_of_pair_counts() {
        let x = Obj::base("X", &["a", "b"]);
        let bx = Obj::bang(&x);
        let counts: Vec<usize> = (0..4)
            .map(|d| bx.elements_of_degree(d, BUDGET).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 2, 3, 4]);
    }

    #[test]
    fn bang_bang_degrees_count_parts() {
        // !!{a}: degree 2 holds [[]] [] ... : [∅,∅] and [[a]]
        let x = Obj::base("X", &["a"]);
        let bbx = Obj::bang(&Obj::bang(&x));
        let d2 = bbx.elements_of_degree(2, BUDGET).unwrap();
        let enc: Vec<String> = d2.iter().map(|e| e.encode()).collect();
        assert_eq!(enc, vec!["[[],[]]", "[[a]]"]);
    }

    #[test]
    fn exp_enumerates_all_functions() {
        let a = Obj::base("A", &["0", "1"]);
        let b = Obj::base("B", &["x", "y", "z"]);
        assert_eq!(Obj::exp(&a, &b).finite_elements(BUDGET).unwrap().len(), 9);
    }

    #[test]
    fn budget_is_enforced() {
        let x = Obj::base("X", &["a", "b", "c"]);
        let bx = Obj::bang(&Obj::bang(&x));
        let err = bx.elements_upto(8, 50).unwrap_err();
        assert!(err.is_resource());
    }
}
