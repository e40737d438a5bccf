use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::Sample;
use crate::error::{Error, Result};
use crate::kernel::{Bounds, Elem, ElemMap, Instance, Morphism, Obj, Probe, Witness, DEFAULT_BUDGET};
use crate::monoidal::{Cartesian, Closed};

/// Finite sets and total functions.
#[derive(Clone, Debug)]
pub struct FinSet {
    pub budget: usize,
}

impl Default for FinSet {
    fn default() -> Self {
        FinSet { budget: DEFAULT_BUDGET }
    }
}

/// A total function stored as its table.
#[derive(Clone, Debug)]
pub struct Func {
    dom: Obj,
    cod: Obj,
    table: Arc<BTreeMap<Elem, Elem>>,
}

impl Morphism for Func {
    fn dom(&self) -> &Obj {
        &self.dom
    }
    fn cod(&self) -> &Obj {
        &self.cod
    }
}

impl Func {
    pub fn apply(&self, x: &Elem) -> Option<&Elem> {
        self.table.get(x)
    }

    pub fn table(&self) -> &BTreeMap<Elem, Elem> {
        &self.table
    }
}

impl FinSet {
    pub fn new(budget: usize) -> Self {
        FinSet { budget }
    }

    fn build(&self, dom: &Obj, cod: &Obj, table: BTreeMap<Elem, Elem>) -> Result<Func> {
        let cod_elems: BTreeSet<Elem> = cod.finite_elements(self.budget)?.into_iter().collect();
        for (x, y) in &table {
            if !cod_elems.contains(y) {
                return Err(Error::Invalid(format!("{x} ↦ {y} leaves codomain {cod}")));
            }
        }
        Ok(Func {
            dom: dom.clone(),
            cod: cod.clone(),
            table: Arc::new(table),
        })
    }

    /// Every function `dom → cod`, in canonical order.
    pub fn all_functions(&self, dom: &Obj, cod: &Obj) -> Result<Vec<Func>> {
        let xs = dom.finite_elements(self.budget)?;
        let tables = Obj::exp(dom, cod).finite_elements(self.budget)?;
        tables
            .into_iter()
            .map(|t| match t {
                Elem::Fun(ys) => self.build(dom, cod, xs.iter().cloned().zip(ys).collect()),
                _ => unreachable!("function-table object yields tables"),
            })
            .collect()
    }
}

impl Instance for FinSet {
    type Mor = Func;

    fn name(&self) -> &'static str {
        "finset"
    }

    fn budget(&self) -> usize {
        self.budget
    }

    fn id(&self, a: &Obj) -> Result<Func> {
        let table = a
            .finite_elements(self.budget)?
            .into_iter()
            .map(|x| (x.clone(), x))
            .collect();
        Ok(Func {
            dom: a.clone(),
            cod: a.clone(),
            table: Arc::new(table),
        })
    }

    fn compose(&self, f: &Func, g: &Func) -> Result<Func> {
        if f.cod != g.dom {
            return Err(Error::boundary(&g.dom, &f.cod));
        }
        let table = f.table.iter().map(|(x, y)| (x.clone(), g.table[y].clone())).collect();
        Ok(Func {
            dom: f.dom.clone(),
            cod: g.cod.clone(),
            table: Arc::new(table),
        })
    }

    fn tensor(&self, f: &Func, g: &Func) -> Result<Func> {
        if f.table.len().saturating_mul(g.table.len()) > self.budget {
            return Err(Error::resource(format!("table of {}⊗{}", f.dom, g.dom), self.budget));
        }
        let mut table = BTreeMap::new();
        for (x1, y1) in f.table.iter() {
            for (x2, y2) in g.table.iter() {
                table.insert(Elem::pair(x1.clone(), x2.clone()), Elem::pair(y1.clone(), y2.clone()));
            }
        }
        Ok(Func {
            dom: Obj::tensor(&f.dom, &g.dom),
            cod: Obj::tensor(&f.cod, &g.cod),
            table: Arc::new(table),
        })
    }

    fn from_fn(&self, dom: &Obj, cod: &Obj, f: ElemMap, _bounds: Bounds) -> Result<Func> {
        let table = dom
            .finite_elements(self.budget)?
            .into_iter()
            .map(|x| {
                let y = f(&x);
                (x, y)
            })
            .collect();
        self.build(dom, cod, table)
    }

    fn from_pairs(&self, dom: &Obj, cod: &Obj, pairs: &[(Elem, Elem)]) -> Result<Func> {
        let mut table = BTreeMap::new();
        for (x, y) in pairs {
            if let Some(prev) = table.insert(x.clone(), y.clone()) {
                if &prev != y {
                    return Err(Error::Invalid(format!("{x} has two images {prev} and {y}")));
                }
            }
        }
        for x in dom.finite_elements(self.budget)? {
            if !table.contains_key(&x) {
                return Err(Error::Invalid(format!("{x} has no image; not a total function")));
            }
        }
        self.build(dom, cod, table)
    }

    fn compare(&self, f: &Func, g: &Func, _probe: &Probe) -> Result<Option<Witness>> {
        self.check_parallel(f, g)?;
        for (x, y) in f.table.iter() {
            let z = &g.table[x];
            if y != z {
                return Ok(Some(Witness::new(x.encode(), y.encode(), z.encode())));
            }
        }
        Ok(None)
    }

    fn payload_eq(&self, f: &Func, g: &Func) -> bool {
        f.dom == g.dom && f.cod == g.cod && f.table == g.table
    }
}

impl Cartesian for FinSet {
    fn terminal(&self, a: &Obj) -> Result<Func> {
        self.from_fn(a, &Obj::Unit, Arc::new(|_| Elem::Star), Bounds::preserving())
    }

    fn pairing(&self, f: &Func, g: &Func) -> Result<Func> {
        if f.dom != g.dom {
            return Err(Error::boundary(&f.dom, &g.dom));
        }
        let table = f
            .table
            .iter()
            .map(|(x, y)| (x.clone(), Elem::pair(y.clone(), g.table[x].clone())))
            .collect();
        Ok(Func {
            dom: f.dom.clone(),
            cod: Obj::tensor(&f.cod, &g.cod),
            table: Arc::new(table),
        })
    }
}

impl Closed for FinSet {
    fn hom_obj(&self, a: &Obj, b: &Obj) -> Obj {
        Obj::exp(a, b)
    }

    fn eval(&self, a: &Obj, b: &Obj) -> Result<Func> {
        let xs = a.finite_elements(self.budget)?;
        let index: BTreeMap<Elem, usize> = xs.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        let dom = Obj::tensor(&Obj::exp(a, b), a);
        self.from_fn(
            &dom,
            b,
            Arc::new(move |p| {
                let (t, x) = p.as_pair().expect("pair input");
                match t {
                    Elem::Fun(ys) => ys[index[x]].clone(),
                    _ => unreachable!("function-table element"),
                }
            }),
            Bounds::preserving(),
        )
    }

    fn curry(&self, f: &Func) -> Result<Func> {
        let (c, a) = f
            .dom
            .tensor_parts()
            .ok_or_else(|| Error::Invalid(format!("curry needs a tensor domain, got {}", f.dom)))?;
        let xs = a.finite_elements(self.budget)?;
        let mut table = BTreeMap::new();
        for z in c.finite_elements(self.budget)? {
            let ys = xs
                .iter()
                .map(|x| f.table[&Elem::pair(z.clone(), x.clone())].clone())
                .collect();
            table.insert(z, Elem::Fun(ys));
        }
        Ok(Func {
            dom: c.clone(),
            cod: Obj::exp(a, &f.cod),
            table: Arc::new(table),
        })
    }
}

impl Sample for FinSet {
    fn sample(&self, dom: &Obj, cod: &Obj, rng: &mut ChaCha8Rng) -> Result<Func> {
        let ys = cod.finite_elements(self.budget)?;
        let xs = dom.finite_elements(self.budget)?;
        if ys.is_empty() && !xs.is_empty() {
            return Err(Error::Invalid(format!("no function {dom} → {cod}")));
        }
        let table = xs
            .into_iter()
            .map(|x| (x, ys[rng.gen_range(0..ys.len())].clone()))
            .collect();
        self.build(dom, cod, table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_functions_two_to_two() {
        let fs = FinSet::default();
        let a = Obj::base("A", &["0", "1"]);
        assert_eq!(fs.all_functions(&a, &a).unwrap().len(), 4);
    }

    #[test]
    fn partial_table_rejected() {
        let fs = FinSet::default();
        let a = Obj::base("A", &["0", "1"]);
        let err = fs
            .from_pairs(&a, &a, &[(Elem::atom("0"), Elem::atom("1"))])
            .unwrap_err();
        assert!(matches!(err, Error::Invalid(_)));
    }

    #[test]
    fn curry_then_eval_recovers() {
        let fs = FinSet::default();
        let a = Obj::base("A", &["0", "1"]);
        let f = fs
            .from_fn(
                &Obj::tensor(&a, &a),
                &a,
                Arc::new(|p| {
                    let (x, y) = p.as_pair().unwrap();
                    if x == y {
                        Elem::atom("0")
                    } else {
                        Elem::atom("1")
                    }
                }),
                Bounds::preserving(),
            )
            .unwrap();
        let c = fs.curry(&f).unwrap();
        let back = fs
            .compose(&fs.tensor(&c, &fs.id(&a).unwrap()).unwrap(), &fs.eval(&a, &a).unwrap())
            .unwrap();
        assert!(fs.compare(&back, &f, &Probe::exhaustive(0)).unwrap().is_none());
    }
}
