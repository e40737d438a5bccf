use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num::{BigInt, BigRational, One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Sample;
use crate::additive::Additive;
use crate::error::{Error, Result};
use crate::kernel::{Bounds, Elem, ElemMap, Instance, Morphism, Obj, Probe, Witness, DEFAULT_BUDGET};
use crate::monoidal::Closed;

pub type Q = BigRational;

/// Sparse column: (row index, nonzero coefficient), sorted by row.
type Column = Vec<(usize, Q)>;

/// An exact rational matrix between objects whose bases are their
/// canonically ordered elements.
#[derive(Clone, Debug)]
pub struct Mat {
    dom: Obj,
    cod: Obj,
    rows: usize,
    cols: Arc<Vec<Column>>,
}

impl Morphism for Mat {
    fn dom(&self) -> &Obj {
        &self.dom
    }
    fn cod(&self) -> &Obj {
        &self.cod
    }
}

impl Mat {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    /// Entry at (row, col).
    pub fn entry(&self, r: usize, c: usize) -> Q {
        self.cols[c]
            .iter()
            .find(|(i, _)| *i == r)
            .map(|(_, q)| q.clone())
            .unwrap_or_else(Q::zero)
    }

    pub fn column(&self, c: usize) -> &[(usize, Q)] {
        &self.cols[c]
    }

    /// Rank over the rationals (Gaussian elimination on a dense copy).
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<Q>> = (0..self.rows)
            .map(|r| (0..self.cols()).map(|c| self.entry(r, c)).collect())
            .collect();
        let (nr, nc) = (self.rows, self.cols());
        let mut rank = 0;
        for c in 0..nc {
            let Some(p) = (rank..nr).find(|&r| !m[r][c].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            let pivot = m[rank][c].clone();
            for r in 0..nr {
                if r != rank && !m[r][c].is_zero() {
                    let factor = &m[r][c] / &pivot;
                    for k in c..nc {
                        let v = &m[rank][k] * &factor;
                        m[r][k] -= v;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

/// The canonical basis of an object.
#[derive(Debug)]
pub struct Basis {
    pub elems: Vec<Elem>,
    pub index: HashMap<Elem, usize>,
}

/// Finite-dimensional vector spaces over ℚ with exact matrices.
#[derive(Debug)]
pub struct MatQ {
    pub budget: usize,
    bases: Mutex<HashMap<Obj, Arc<Basis>>>,
}

impl Default for MatQ {
    fn default() -> Self {
        MatQ::new(DEFAULT_BUDGET)
    }
}

impl Clone for MatQ {
    fn clone(&self) -> Self {
        MatQ::new(self.budget)
    }
}

fn add_into(acc: &mut BTreeMap<usize, Q>, r: usize, q: Q) {
    let e = acc.entry(r).or_insert_with(Q::zero);
    *e += q;
}

fn finish(acc: BTreeMap<usize, Q>) -> Column {
    acc.into_iter().filter(|(_, q)| !q.is_zero()).collect()
}

fn render_coeff(q: &Q) -> String {
    if q.is_integer() {
        q.to_integer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl MatQ {
    pub fn new(budget: usize) -> Self {
        MatQ {
            budget,
            bases: Mutex::new(HashMap::new()),
        }
    }

    pub fn basis(&self, a: &Obj) -> Result<Arc<Basis>> {
        if let Some(b) = self.bases.lock().expect("basis lock").get(a) {
            return Ok(b.clone());
        }
        let elems = a.finite_elements(self.budget)?;
        let index = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let b = Arc::new(Basis { elems, index });
        self.bases.lock().expect("basis lock").insert(a.clone(), b.clone());
        Ok(b)
    }

    pub fn dim(&self, a: &Obj) -> Result<usize> {
        Ok(self.basis(a)?.elems.len())
    }

    /// Matrix from dense rows (`rows[r][c]`).
    pub fn from_rows(&self, dom: &Obj, cod: &Obj, rows: &[Vec<Q>]) -> Result<Mat> {
        let (nr, nc) = (self.dim(cod)?, self.dim(dom)?);
        if rows.len() != nr || rows.iter().any(|r| r.len() != nc) {
            return Err(Error::Invalid(format!("matrix shape does not match {dom} → {cod}")));
        }
        let cols = (0..nc)
            .map(|c| {
                (0..nr)
                    .filter(|&r| !rows[r][c].is_zero())
                    .map(|r| (r, rows[r][c].clone()))
                    .collect()
            })
            .collect();
        Ok(Mat {
            dom: dom.clone(),
            cod: cod.clone(),
            rows: nr,
            cols: Arc::new(cols),
        })
    }

    /// `c · f`.
    pub fn scale(&self, c: &Q, f: &Mat) -> Mat {
        let cols = f
            .cols
            .iter()
            .map(|col| {
                col.iter()
                    .map(|(r, q)| (*r, q * c))
                    .filter(|(_, q)| !q.is_zero())
                    .collect()
            })
            .collect();
        Mat {
            cols: Arc::new(cols),
            ..f.clone()
        }
    }

    /// `f` applied to a dense vector.
    pub fn apply(&self, f: &Mat, v: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); f.rows];
        for (c, col) in f.cols.iter().enumerate() {
            if v[c].is_zero() {
                continue;
            }
            for (r, q) in col {
                out[*r] += q * &v[c];
            }
        }
        out
    }

    fn render_column(&self, basis: &Basis, col: &[(usize, Q)]) -> String {
        if col.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (r, q)) in col.iter().enumerate() {
            let name = format!("e{}", basis.elems[*r].encode());
            let term = if q.is_one() {
                name
            } else if (-q).is_one() {
                format!("-{name}")
            } else {
                format!("{}·{name}", render_coeff(q))
            };
            if k > 0 {
                if let Some(t) = term.strip_prefix('-') {
                    s.push_str(" - ");
                    s.push_str(t);
                    continue;
                }
                s.push_str(" + ");
            }
            s.push_str(&term);
        }
        s
    }

    fn column_witness(&self, f: &Mat, g: &Mat) -> Result<Option<Witness>> {
        let bd = self.basis(&f.dom)?;
        let bc = self.basis(&f.cod)?;
        for c in 0..f.cols() {
            if f.cols[c] != g.cols[c] {
                return Ok(Some(Witness::new(
                    format!("e{}", bd.elems[c].encode()),
                    self.render_column(&bc, &f.cols[c]),
                    self.render_column(&bc, &g.cols[c]),
                )));
            }
        }
        Ok(None)
    }

    /// A seeded random rational vector with small numerators and denominators.
    pub fn random_vector(n: usize, rng: &mut ChaCha8Rng) -> Vec<Q> {
        (0..n)
            .map(|_| {
                Q::new(
                    BigInt::from(rng.gen_range(-9i64..=9)),
                    BigInt::from(rng.gen_range(1i64..=4)),
                )
            })
            .collect()
    }
}

impl Instance for MatQ {
    type Mor = Mat;

    fn name(&self) -> &'static str {
        "matq"
    }

    fn budget(&self) -> usize {
        self.budget
    }

    fn id(&self, a: &Obj) -> Result<Mat> {
        let n = self.dim(a)?;
        Ok(Mat {
            dom: a.clone(),
            cod: a.clone(),
            rows: n,
            cols: Arc::new((0..n).map(|i| vec![(i, Q::one())]).collect()),
        })
    }

    fn compose(&self, f: &Mat, g: &Mat) -> Result<Mat> {
        if f.cod != g.dom {
            return Err(Error::boundary(&g.dom, &f.cod));
        }
        let cols = f
            .cols
            .iter()
            .map(|col| {
                let mut acc = BTreeMap::new();
                for (k, a) in col {
                    for (r, b) in &g.cols[*k] {
                        add_into(&mut acc, *r, a * b);
                    }
                }
                finish(acc)
            })
            .collect();
        Ok(Mat {
            dom: f.dom.clone(),
            cod: g.cod.clone(),
            rows: g.rows,
            cols: Arc::new(cols),
        })
    }

    fn tensor(&self, f: &Mat, g: &Mat) -> Result<Mat> {
        // basis of A⊗B is lexicographic, so index(a,b) = i_a·dim B + i_b
        let n = f.cols().saturating_mul(g.cols());
        if n > self.budget {
            return Err(Error::resource(
                format!("Kronecker product {}⊗{}", f.dom, g.dom),
                self.budget,
            ));
        }
        let mut cols = Vec::with_capacity(n);
        for cf in f.cols.iter() {
            for cg in g.cols.iter() {
                let mut col = Vec::with_capacity(cf.len() * cg.len());
                for (ra, a) in cf {
                    for (rb, b) in cg {
                        col.push((ra * g.rows + rb, a * b));
                    }
                }
                cols.push(col);
            }
        }
        Ok(Mat {
            dom: Obj::tensor(&f.dom, &g.dom),
            cod: Obj::tensor(&f.cod, &g.cod),
            rows: f.rows * g.rows,
            cols: Arc::new(cols),
        })
    }

    fn from_fn(&self, dom: &Obj, cod: &Obj, f: ElemMap, _bounds: Bounds) -> Result<Mat> {
        let bd = self.basis(dom)?;
        let bc = self.basis(cod)?;
        let cols = bd
            .elems
            .iter()
            .map(|x| {
                let y = f(x);
                bc.index
                    .get(&y)
                    .map(|&r| vec![(r, Q::one())])
                    .ok_or_else(|| Error::Invalid(format!("{x} ↦ {y} leaves the basis of {cod}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Mat {
            dom: dom.clone(),
            cod: cod.clone(),
            rows: bc.elems.len(),
            cols: Arc::new(cols),
        })
    }

    fn from_pairs(&self, dom: &Obj, cod: &Obj, pairs: &[(Elem, Elem)]) -> Result<Mat> {
        let bd = self.basis(dom)?;
        let bc = self.basis(cod)?;
        let mut acc: Vec<BTreeMap<usize, Q>> = vec![BTreeMap::new(); bd.elems.len()];
        for (x, y) in pairs {
            let c = *bd
                .index
                .get(x)
                .ok_or_else(|| Error::Invalid(format!("{x} not a basis element of {dom}")))?;
            let r = *bc
                .index
                .get(y)
                .ok_or_else(|| Error::Invalid(format!("{y} not a basis element of {cod}")))?;
            add_into(&mut acc[c], r, Q::one());
        }
        Ok(Mat {
            dom: dom.clone(),
            cod: cod.clone(),
            rows: bc.elems.len(),
            cols: Arc::new(acc.into_iter().map(finish).collect()),
        })
    }

    fn compare(&self, f: &Mat, g: &Mat, probe: &Probe) -> Result<Option<Witness>> {
        self.check_parallel(f, g)?;
        if let Some(n) = probe.samples {
            let mut rng = ChaCha8Rng::seed_from_u64(probe.seed);
            let mut differs = false;
            for _ in 0..n {
                let v = MatQ::random_vector(f.cols(), &mut rng);
                if self.apply(f, &v) != self.apply(g, &v) {
                    differs = true;
                    break;
                }
            }
            if !differs {
                return Ok(None);
            }
        }
        self.column_witness(f, g)
    }

    fn payload_eq(&self, f: &Mat, g: &Mat) -> bool {
        f.dom == g.dom && f.cod == g.cod && f.cols == g.cols
    }
}

impl Closed for MatQ {
    fn hom_obj(&self, a: &Obj, b: &Obj) -> Obj {
        Obj::hom(a, b)
    }

    fn eval(&self, a: &Obj, b: &Obj) -> Result<Mat> {
        let xs = a.finite_elements(self.budget)?;
        let ys = b.finite_elements(self.budget)?;
        let mut pairs = Vec::new();
        for x in &xs {
            for y in &ys {
                pairs.push((Elem::pair(Elem::pair(x.clone(), y.clone()), x.clone()), y.clone()));
            }
        }
        self.from_pairs(&Obj::tensor(&Obj::hom(a, b), a), b, &pairs)
    }

    fn curry(&self, f: &Mat) -> Result<Mat> {
        let (c, a) = f
            .dom
            .tensor_parts()
            .ok_or_else(|| Error::Invalid(format!("curry needs a tensor domain, got {}", f.dom)))?;
        let bdom = self.basis(&f.dom)?;
        let bcod = self.basis(&f.cod)?;
        let hom = Obj::hom(a, &f.cod);
        let bhom = self.basis(&hom)?;
        let zs = c.finite_elements(self.budget)?;
        let xs = a.finite_elements(self.budget)?;
        let cols = zs
            .iter()
            .map(|z| {
                let mut acc = BTreeMap::new();
                for x in &xs {
                    let col = bdom.index[&Elem::pair(z.clone(), x.clone())];
                    for (r, q) in &f.cols[col] {
                        let h = Elem::pair(x.clone(), bcod.elems[*r].clone());
                        add_into(&mut acc, bhom.index[&h], q.clone());
                    }
                }
                finish(acc)
            })
            .collect();
        Ok(Mat {
            dom: c.clone(),
            cod: hom,
            rows: bhom.elems.len(),
            cols: Arc::new(cols),
        })
    }
}

impl Additive for MatQ {
    fn add(&self, f: &Mat, g: &Mat) -> Result<Mat> {
        self.check_parallel(f, g)?;
        let cols = f
            .cols
            .iter()
            .zip(g.cols.iter())
            .map(|(a, b)| {
                let mut acc = BTreeMap::new();
                for (r, q) in a.iter().chain(b.iter()) {
                    add_into(&mut acc, *r, q.clone());
                }
                finish(acc)
            })
            .collect();
        Ok(Mat {
            cols: Arc::new(cols),
            ..f.clone()
        })
    }

    fn zero(&self, a: &Obj, b: &Obj) -> Result<Mat> {
        Ok(Mat {
            dom: a.clone(),
            cod: b.clone(),
            rows: self.dim(b)?,
            cols: Arc::new(vec![Vec::new(); self.dim(a)?]),
        })
    }

    fn native_neg(&self, f: &Mat) -> Option<Result<Mat>> {
        Some(Ok(self.scale(&-Q::one(), f)))
    }
}

impl Sample for MatQ {
    fn sample(&self, dom: &Obj, cod: &Obj, rng: &mut ChaCha8Rng) -> Result<Mat> {
        let (nr, nc) = (self.dim(cod)?, self.dim(dom)?);
        let rows: Vec<Vec<Q>> = (0..nr)
            .map(|_| {
                (0..nc)
                    .map(|_| {
                        if rng.gen_bool(0.4) {
                            Q::zero()
                        } else {
                            Q::new(
                                BigInt::from(rng.gen_range(-5i64..=5)),
                                BigInt::from(rng.gen_range(1i64..=3)),
                            )
                        }
                    })
                    .collect()
            })
            .collect();
        self.from_rows(dom, cod, &rows)
    }
}

/// Convenience: an integer as an exact rational.
pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// True when every entry is an integer in absolute value ≤ `bound`.
pub fn small_integer_entries(m: &Mat, bound: i64) -> bool {
    m.cols
        .iter()
        .flatten()
        .all(|(_, v)| v.is_integer() && v.abs() <= q(bound))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronecker_matches_basis_order() {
        let mq = MatQ::default();
        let a = Obj::base("A", &["0", "1"]);
        let swap = mq
            .from_pairs(
                &a,
                &a,
                &[(Elem::atom("0"), Elem::atom("1")), (Elem::atom("1"), Elem::atom("0"))],
            )
            .unwrap();
        let id = mq.id(&a).unwrap();
        let t = mq.tensor(&swap, &id).unwrap();
        // (0,1) ↦ (1,1): column 1 has its one at row 3
        assert_eq!(t.column(1), &[(3, q(1))]);
    }

    #[test]
    fn witness_renders_basis_names() {
        let mq = MatQ::default();
        let a = Obj::base("A", &["0", "1", "2"]);
        let f = mq.id(&a).unwrap();
        let g = mq
            .from_pairs(
                &a,
                &a,
                &[
                    (Elem::atom("0"), Elem::atom("0")),
                    (Elem::atom("1"), Elem::atom("2")),
                    (Elem::atom("2"), Elem::atom("2")),
                ],
            )
            .unwrap();
        let w = mq.compare(&f, &g, &Probe::exhaustive(0)).unwrap().unwrap();
        assert_eq!((w.input.as_str(), w.lhs.as_str(), w.rhs.as_str()), ("e1", "e1", "e2"));
    }

    #[test]
    fn rank_of_singular_matrix() {
        let mq = MatQ::default();
        let a = Obj::base("A", &["0", "1"]);
        let m = mq.from_rows(&a, &a, &[vec![q(1), q(2)], vec![q(2), q(4)]]).unwrap();
        assert_eq!(m.rank(), 1);
    }
}
