use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::Sample;
use crate::additive::Additive;
use crate::error::{Error, Result};
use crate::kernel::{bags, Bounds, Elem, ElemMap, Instance, Morphism, Obj, Probe, Witness, DEFAULT_BUDGET, INF};
use crate::monoidal::Closed;

type ImageFn = dyn Fn(&Elem, usize) -> Result<Vec<Elem>> + Send + Sync;
/// Images keyed by (input, output degree cap).
type ImageCache = Mutex<HashMap<(Elem, usize), Arc<Vec<Elem>>>>;

struct RelImp {
    image: Box<ImageFn>,
    bounds: Bounds,
    cache: ImageCache,
}

/// A relation between graded carriers, evaluated lazily.
///
/// `image(x, cap)` is exactly the set of related outputs of degree ≤ cap.
#[derive(Clone)]
pub struct Rel {
    dom: Obj,
    cod: Obj,
    imp: Arc<RelImp>,
}

impl std::fmt::Debug for Rel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Rel({} → {})", self.dom, self.cod)
    }
}

impl Morphism for Rel {
    fn dom(&self) -> &Obj {
        &self.dom
    }
    fn cod(&self) -> &Obj {
        &self.cod
    }
}

impl Rel {
    /// A relation given by its image function. `image` must return only
    /// outputs of degree ≤ cap; order and duplicates are normalised here.
    pub fn lazy(
        dom: &Obj,
        cod: &Obj,
        bounds: Bounds,
        image: impl Fn(&Elem, usize) -> Result<Vec<Elem>> + Send + Sync + 'static,
    ) -> Rel {
        Rel {
            dom: dom.clone(),
            cod: cod.clone(),
            imp: Arc::new(RelImp {
                image: Box::new(image),
                bounds,
                cache: Mutex::new(HashMap::new()),
            }),
        }
    }

    pub fn bounds(&self) -> &Bounds {
        &self.imp.bounds
    }

    /// Sorted outputs of `x` with degree ≤ cap.
    pub fn image(&self, x: &Elem, cap: usize) -> Result<Arc<Vec<Elem>>> {
        let key = (x.clone(), cap);
        if let Some(v) = self.imp.cache.lock().expect("cache lock").get(&key) {
            return Ok(v.clone());
        }
        let mut v = (self.imp.image)(x, cap)?;
        v.retain(|y| y.degree() <= cap);
        v.sort();
        v.dedup();
        let v = Arc::new(v);
        self.imp.cache.lock().expect("cache lock").insert(key, v.clone());
        Ok(v)
    }

    pub fn contains(&self, x: &Elem, y: &Elem) -> Result<bool> {
        Ok(self.image(x, y.degree())?.binary_search(y).is_ok())
    }

    /// All pairs with input degree ≤ d and output degree ≤ cap.
    pub fn graph(&self, d: usize, cap: usize, budget: usize) -> Result<Vec<(Elem, Elem)>> {
        let mut out = Vec::new();
        for x in self.dom.elements_upto(d, budget)? {
            for y in self.image(&x, cap)?.iter() {
                out.push((x.clone(), y.clone()));
                if out.len() > budget {
                    return Err(Error::resource(
                        format!("graph of relation {} → {}", self.dom, self.cod),
                        budget,
                    ));
                }
            }
        }
        Ok(out)
    }
}

/// Finite (and graded) sets with relations.
#[derive(Clone, Debug)]
pub struct FinRel {
    pub budget: usize,
}

impl Default for FinRel {
    fn default() -> Self {
        FinRel { budget: DEFAULT_BUDGET }
    }
}

fn render_set(xs: &[Elem]) -> String {
    const SHOW: usize = 12;
    let mut s = String::from("{");
    for (i, x) in xs.iter().take(SHOW).enumerate() {
        if i > 0 {
            s.push(',');
        }
        s.push_str(&x.encode());
    }
    if xs.len() > SHOW {
        s.push_str(&format!(",…+{}", xs.len() - SHOW));
    }
    s.push('}');
    s
}

impl FinRel {
    pub fn new(budget: usize) -> Self {
        FinRel { budget }
    }

    /// The union of two parallel relations.
    pub fn union(&self, f: &Rel, g: &Rel) -> Result<Rel> {
        self.check_parallel(f, g)?;
        let (f2, g2) = (f.clone(), g.clone());
        Ok(Rel::lazy(&f.dom, &f.cod, f.bounds().join(g.bounds()), move |x, cap| {
            let mut v: Vec<Elem> = f2.image(x, cap)?.to_vec();
            v.extend(g2.image(x, cap)?.iter().cloned());
            Ok(v)
        }))
    }

    pub fn empty(&self, dom: &Obj, cod: &Obj) -> Rel {
        Rel::lazy(dom, cod, Bounds::constant(0, 0), |_, _| Ok(vec![]))
    }

    /// `!f`: bags related elementwise along some matching.
    pub fn bang(&self, f: &Rel) -> Rel {
        let budget = self.budget;
        let f2 = f.clone();
        Rel::lazy(
            &Obj::bang(&f.dom),
            &Obj::bang(&f.cod),
            f.bounds().bang(),
            move |x, cap| {
                let xs = match x.as_bag() {
                    Some(xs) => xs,
                    None => return Ok(vec![]),
                };
                let n = xs.len();
                if n > cap {
                    return Ok(vec![]);
                }
                let room = cap - n;
                // per run of equal inputs: multisets of outputs of that size
                let mut choices: Vec<(Vec<Elem>, usize)> = vec![(Vec::new(), 0)];
                for (elem, k) in bags::runs(xs) {
                    let outs = f2.image(&elem, room)?;
                    let mut next = Vec::new();
                    for (acc, used) in &choices {
                        multichoose(&outs, k, room - used, &mut |pick, w| {
                            let mut a = acc.clone();
                            a.extend_from_slice(pick);
                            next.push((a, used + w));
                        });
                        if next.len() > budget {
                            return Err(Error::resource(format!("image of !({} → {})", f2.dom, f2.cod), budget));
                        }
                    }
                    choices = next;
                }
                Ok(choices.into_iter().map(|(v, _)| Elem::bag(v)).collect())
            },
        )
    }

    /// Every relation between two finite carriers.
    pub fn all_relations(&self, dom: &Obj, cod: &Obj) -> Result<Vec<Rel>> {
        let xs = dom.finite_elements(self.budget)?;
        let ys = cod.finite_elements(self.budget)?;
        let cells: Vec<(Elem, Elem)> = xs
            .iter()
            .flat_map(|x| ys.iter().map(move |y| (x.clone(), y.clone())))
            .collect();
        if cells.len() >= 20 || (1usize << cells.len()) > self.budget {
            return Err(Error::resource(format!("relations {dom} → {cod}"), self.budget));
        }
        (0..(1usize << cells.len()))
            .map(|mask| {
                let pairs: Vec<(Elem, Elem)> = cells
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, p)| p.clone())
                    .collect();
                self.from_pairs(dom, cod, &pairs)
            })
            .collect()
    }

    /// Output cap used when comparing at input degree `d`.
    pub fn output_cap(f: &Rel, g: &Rel, d: usize) -> usize {
        let fs = [f.bounds().forward_at(d), g.bounds().forward_at(d)];
        let finite = fs.iter().flatten().copied().max().unwrap_or(0);
        if fs.iter().all(Option::is_some) {
            finite
        } else {
            finite.max(2 * d + 2)
        }
    }
}

/// Calls `emit` with every size-`k` multiset drawn from sorted `outs` whose
/// total degree is ≤ room, together with that total.
fn multichoose(outs: &[Elem], k: usize, room: usize, emit: &mut dyn FnMut(&[Elem], usize)) {
    fn go(
        outs: &[Elem],
        start: usize,
        k: usize,
        room: usize,
        w: usize,
        acc: &mut Vec<Elem>,
        emit: &mut dyn FnMut(&[Elem], usize),
    ) {
        if acc.len() == k {
            emit(acc, w);
            return;
        }
        for i in start..outs.len() {
            let dw = outs[i].degree();
            if w + dw <= room {
                acc.push(outs[i].clone());
                go(outs, i, k, room, w + dw, acc, emit);
                acc.pop();
            }
        }
    }
    let mut acc = Vec::with_capacity(k);
    go(outs, 0, k, room, 0, &mut acc, emit);
}

impl Instance for FinRel {
    type Mor = Rel;

    fn name(&self) -> &'static str {
        "finrel"
    }

    fn budget(&self) -> usize {
        self.budget
    }

    fn id(&self, a: &Obj) -> Result<Rel> {
        Ok(Rel::lazy(a, a, Bounds::preserving(), |x, _| Ok(vec![x.clone()])))
    }

    fn compose(&self, f: &Rel, g: &Rel) -> Result<Rel> {
        if f.cod != g.dom {
            return Err(Error::boundary(&g.dom, &f.cod));
        }
        let (f2, g2) = (f.clone(), g.clone());
        let budget = self.budget;
        Ok(Rel::lazy(&f.dom, &g.cod, f.bounds().then(g.bounds()), move |x, cap| {
            let mid = g2.bounds().inverse_at(cap);
            let mut out = BTreeSet::new();
            for y in f2.image(x, mid)?.iter() {
                out.extend(g2.image(y, cap)?.iter().cloned());
                if out.len() > budget {
                    return Err(Error::resource(
                        format!("image of composite {} → {}", f2.dom, g2.cod),
                        budget,
                    ));
                }
            }
            Ok(out.into_iter().collect())
        }))
    }

    fn tensor(&self, f: &Rel, g: &Rel) -> Result<Rel> {
        let (f2, g2) = (f.clone(), g.clone());
        let budget = self.budget;
        Ok(Rel::lazy(
            &Obj::tensor(&f.dom, &g.dom),
            &Obj::tensor(&f.cod, &g.cod),
            f.bounds().tensor(g.bounds()),
            move |x, cap| {
                let (x1, x2) = match x.as_pair() {
                    Some(p) => p,
                    None => return Ok(vec![]),
                };
                let mut out = Vec::new();
                let ys1 = f2.image(x1, cap)?;
                if ys1.is_empty() {
                    return Ok(out);
                }
                for y1 in ys1.iter() {
                    for y2 in g2.image(x2, cap - y1.degree())?.iter() {
                        out.push(Elem::pair(y1.clone(), y2.clone()));
                    }
                    if out.len() > budget {
                        return Err(Error::resource(format!("image of {}⊗{}", f2.dom, g2.dom), budget));
                    }
                }
                Ok(out)
            },
        ))
    }

    fn from_fn(&self, dom: &Obj, cod: &Obj, f: ElemMap, bounds: Bounds) -> Result<Rel> {
        Ok(Rel::lazy(dom, cod, bounds, move |x, _| Ok(vec![f(x)])))
    }

    fn from_pairs(&self, dom: &Obj, cod: &Obj, pairs: &[(Elem, Elem)]) -> Result<Rel> {
        let mut table: BTreeMap<Elem, Vec<Elem>> = BTreeMap::new();
        let (mut din, mut dout) = (0, 0);
        for (x, y) in pairs {
            din = din.max(x.degree());
            dout = dout.max(y.degree());
            table.entry(x.clone()).or_default().push(y.clone());
        }
        let table = Arc::new(table);
        Ok(Rel::lazy(dom, cod, Bounds::constant(dout, din), move |x, _| {
            Ok(table.get(x).cloned().unwrap_or_default())
        }))
    }

    fn compare(&self, f: &Rel, g: &Rel, probe: &Probe) -> Result<Option<Witness>> {
        self.check_parallel(f, g)?;
        let cap = FinRel::output_cap(f, g, probe.degree);
        for x in f.dom.elements_upto(probe.degree, self.budget)? {
            let a = f.image(&x, cap)?;
            let b = g.image(&x, cap)?;
            if a != b {
                return Ok(Some(Witness::new(x.encode(), render_set(&a), render_set(&b))));
            }
        }
        Ok(None)
    }

    fn payload_eq(&self, f: &Rel, g: &Rel) -> bool {
        Arc::ptr_eq(&f.imp, &g.imp)
    }

    fn with_bounds(&self, f: &Rel, bounds: Bounds) -> Rel {
        let inner = f.clone();
        Rel::lazy(&f.dom, &f.cod, bounds, move |x, cap| Ok(inner.image(x, cap)?.to_vec()))
    }

    fn bounds_violation(&self, f: &Rel, bounds: &Bounds, probe: &Probe) -> Result<Option<Witness>> {
        for x in f.dom.elements_upto(probe.degree, self.budget)? {
            let d = x.degree();
            let declared = bounds.forward_at(d);
            // look past the declared cap so that overshooting outputs show up
            let cap = declared.unwrap_or(d).max(d) * 2 + 2;
            for y in f.image(&x, cap)?.iter() {
                let over = declared.is_some_and(|c| y.degree() > c);
                if over || d > bounds.inverse_at(y.degree()) {
                    return Ok(Some(Witness::new(
                        x.encode(),
                        y.encode(),
                        "within declared degree bounds",
                    )));
                }
            }
        }
        Ok(None)
    }
}

impl Closed for FinRel {
    fn hom_obj(&self, a: &Obj, b: &Obj) -> Obj {
        Obj::hom(a, b)
    }

    fn eval(&self, a: &Obj, b: &Obj) -> Result<Rel> {
        let dom = Obj::tensor(&Obj::hom(a, b), a);
        let graded = !a.is_finite();
        let inverse = move |c: usize| if graded { INF } else { c };
        Ok(Rel::lazy(&dom, b, Bounds::new(Some(|d| d), inverse), |x, _| {
            let (h, a2) = match x.as_pair() {
                Some(p) => p,
                None => return Ok(vec![]),
            };
            match h.as_pair() {
                Some((a1, y)) if a1 == a2 => Ok(vec![y.clone()]),
                _ => Ok(vec![]),
            }
        }))
    }

    fn curry(&self, f: &Rel) -> Result<Rel> {
        let (c, a) = f
            .dom
            .tensor_parts()
            .ok_or_else(|| Error::Invalid(format!("curry needs a tensor domain, got {}", f.dom)))?;
        let (c, a) = (c.clone(), a.clone());
        let forward = if a.is_finite() {
            f.bounds().forward.clone()
        } else {
            None
        };
        let inverse = f.bounds().inverse.clone();
        let bounds = Bounds { forward, inverse };
        let f2 = f.clone();
        let a2 = a.clone();
        let budget = self.budget;
        Ok(Rel::lazy(&c, &Obj::hom(&a, &f.cod), bounds, move |z, cap| {
            let mut out = Vec::new();
            for x in a2.elements_upto(cap, budget)? {
                let dx = x.degree();
                for y in f2.image(&Elem::pair(z.clone(), x.clone()), cap - dx)?.iter() {
                    out.push(Elem::pair(x.clone(), y.clone()));
                }
            }
            Ok(out)
        }))
    }
}

impl Additive for FinRel {
    fn add(&self, f: &Rel, g: &Rel) -> Result<Rel> {
        self.union(f, g)
    }

    fn zero(&self, a: &Obj, b: &Obj) -> Result<Rel> {
        Ok(self.empty(a, b))
    }

    fn native_neg(&self, _f: &Rel) -> Option<Result<Rel>> {
        None
    }
}

impl Sample for FinRel {
    fn sample(&self, dom: &Obj, cod: &Obj, rng: &mut ChaCha8Rng) -> Result<Rel> {
        let xs = dom.finite_elements(self.budget)?;
        let ys = cod.finite_elements(self.budget)?;
        let mut pairs = Vec::new();
        for x in &xs {
            for y in &ys {
                if rng.gen_bool(0.5) {
                    pairs.push((x.clone(), y.clone()));
                }
            }
        }
        self.from_pairs(dom, cod, &pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x1() -> Obj {
        Obj::base("X", &["a"])
    }

    #[test]
    fn bang_relates_equal_sized_bags() {
        let fr = FinRel::default();
        let x = Obj::base("X", &["a", "b"]);
        let r = fr
            .from_pairs(
                &x,
                &x,
                &[(Elem::atom("a"), Elem::atom("a")), (Elem::atom("a"), Elem::atom("b"))],
            )
            .unwrap();
        let br = fr.bang(&r);
        let aa = Elem::bag(vec![Elem::atom("a"), Elem::atom("a")]);
        let img = br.image(&aa, 10).unwrap();
        let enc: Vec<String> = img.iter().map(Elem::encode).collect();
        assert_eq!(enc, vec!["[a,a]", "[a,b]", "[b,b]"]);
        let bb = Elem::bag(vec![Elem::atom("b")]);
        assert!(br.image(&bb, 10).unwrap().is_empty());
    }

    #[test]
    fn composite_respects_cap() {
        let fr = FinRel::default();
        let x = x1();
        let id = fr.id(&Obj::bang(&x)).unwrap();
        let c = fr.compose(&id, &id).unwrap();
        let aa = Elem::bag(vec![Elem::atom("a"), Elem::atom("a")]);
        assert_eq!(c.image(&aa, 1).unwrap().len(), 0);
        assert_eq!(c.image(&aa, 2).unwrap().len(), 1);
    }

    #[test]
    fn all_relations_on_unit() {
        let fr = FinRel::default();
        assert_eq!(fr.all_relations(&Obj::Unit, &Obj::Unit).unwrap().len(), 2);
    }
}
