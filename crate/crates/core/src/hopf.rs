//! Monoids, comonoids, bimonoids, Hopf monoids and groups: data, law
//! suites and the stock constructions from finite group tables.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::instances::Enumerable;
use crate::kernel::{Checker, Elem, Instance, Obj, Probe, SuiteResult, Witness};
use crate::monoidal::{cartesian_comonoid, Cartesian, Smc};

pub const MONOID_ANCHOR: &str = "monoid: multiplication and unit, associativity and unit laws";
pub const COMONOID_ANCHOR: &str = "comonoid: comultiplication and counit, coassociativity and counit laws";
pub const BIMONOID_ANCHOR: &str = "bimonoid: compatibility through the interchange map";
pub const HOPF_ANCHOR: &str = "Hopf monoid: antipode law";
pub const ANTIPODE_UNIQUE_ANCHOR: &str = "the antipode is unique";

#[derive(Clone, Debug)]
pub struct MonoidData<M> {
    pub carrier: Obj,
    pub mult: M,
    pub unit: M,
}

#[derive(Clone, Debug)]
pub struct ComonoidData<M> {
    pub carrier: Obj,
    pub comult: M,
    pub counit: M,
}

#[derive(Clone, Debug)]
pub struct BimonoidData<M> {
    pub monoid: MonoidData<M>,
    pub comonoid: ComonoidData<M>,
}

#[derive(Clone, Debug)]
pub struct HopfMonoidData<M> {
    pub bimonoid: BimonoidData<M>,
    pub antipode: M,
}

impl<M: Clone> HopfMonoidData<M> {
    pub fn carrier(&self) -> &Obj {
        &self.bimonoid.monoid.carrier
    }
    pub fn mult(&self) -> &M {
        &self.bimonoid.monoid.mult
    }
    pub fn unit(&self) -> &M {
        &self.bimonoid.monoid.unit
    }
    pub fn comult(&self) -> &M {
        &self.bimonoid.comonoid.comult
    }
    pub fn counit(&self) -> &M {
        &self.bimonoid.comonoid.counit
    }

    pub fn with_antipode(&self, s: M) -> Self {
        HopfMonoidData {
            bimonoid: self.bimonoid.clone(),
            antipode: s,
        }
    }
}

/// A finite monoid given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMonoid {
    pub name: String,
    /// Element names in order of first appearance.
    pub elems: Vec<String>,
    table: BTreeMap<(String, String), String>,
}

/// A finite group: a [`FiniteMonoid`] whose table passed the group checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group(FiniteMonoid);

impl FiniteMonoid {
    pub fn from_table(name: &str, elems: &[&str], mul: impl Fn(usize, usize) -> usize) -> Result<FiniteMonoid> {
        let elems: Vec<String> = elems.iter().map(|s| s.to_string()).collect();
        let mut table = BTreeMap::new();
        for i in 0..elems.len() {
            for j in 0..elems.len() {
                table.insert((elems[i].clone(), elems[j].clone()), elems[mul(i, j)].clone());
            }
        }
        let m = FiniteMonoid {
            name: name.to_string(),
            elems,
            table,
        };
        m.validate_monoid()?;
        Ok(m)
    }

    /// Parses `monoid <name> <order>` or `group <name> <order>` followed by
    /// order² lines `g h gh`. Returns the header keyword too.
    pub fn parse(text: &str) -> Result<(String, FiniteMonoid)> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Config("empty table".into()))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        if h.len() != 3 || (h[0] != "group" && h[0] != "monoid") {
            return Err(Error::Config(format!(
                "bad header `{header}`; expected `group <name> <order>`"
            )));
        }
        let order: usize = h[2]
            .parse()
            .map_err(|_| Error::Config(format!("bad order `{}`", h[2])))?;
        let mut elems: Vec<String> = Vec::new();
        let mut table = BTreeMap::new();
        let mut rows = 0;
        for line in lines {
            let p: Vec<&str> = line.split_whitespace().collect();
            if p.len() != 3 {
                return Err(Error::Config(format!("bad row `{line}`; expected `g h gh`")));
            }
            for name in &p {
                if !elems.iter().any(|e| e == name) {
                    elems.push(name.to_string());
                }
            }
            if table
                .insert((p[0].to_string(), p[1].to_string()), p[2].to_string())
                .is_some()
            {
                return Err(Error::Config(format!("duplicate row for {} {}", p[0], p[1])));
            }
            rows += 1;
        }
        if elems.len() != order {
            return Err(Error::Config(format!(
                "{} distinct elements, header says {order}",
                elems.len()
            )));
        }
        if rows != order * order {
            return Err(Error::Config(format!(
                "{rows} rows, a total table needs {}",
                order * order
            )));
        }
        for a in &elems {
            for b in &elems {
                if !table.contains_key(&(a.clone(), b.clone())) {
                    return Err(Error::Config(format!("missing product {a} {b}")));
                }
            }
        }
        let m = FiniteMonoid {
            name: h[1].to_string(),
            elems,
            table,
        };
        m.validate_monoid()?;
        Ok((h[0].to_string(), m))
    }

    pub fn to_text(&self, keyword: &str) -> String {
        let mut s = format!("{keyword} {} {}\n", self.name, self.elems.len());
        for a in &self.elems {
            for b in &self.elems {
                s.push_str(&format!("{a} {b} {}\n", self.mul(a, b)));
            }
        }
        s
    }

    pub fn mul(&self, a: &str, b: &str) -> &str {
        &self.table[&(a.to_string(), b.to_string())]
    }

    pub fn identity(&self) -> Option<&str> {
        self.elems
            .iter()
            .find(|e| self.elems.iter().all(|x| self.mul(e, x) == x && self.mul(x, e) == x))
            .map(String::as_str)
    }

    fn validate_monoid(&self) -> Result<()> {
        if self.identity().is_none() {
            return Err(Error::Invalid(format!("{}: no identity element", self.name)));
        }
        for a in &self.elems {
            for b in &self.elems {
                for c in &self.elems {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::Invalid(format!("{}: ({a}{b}){c} ≠ {a}({b}{c})", self.name)));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn carrier(&self) -> Obj {
        let names: Vec<&str> = self.elems.iter().map(String::as_str).collect();
        Obj::base(&self.name, &names)
    }

    /// ∇ and u as morphisms of `inst`, from the table.
    pub fn monoid_data<I: Instance>(&self, inst: &I) -> Result<MonoidData<I::Mor>> {
        let g = self.carrier();
        let gg = Obj::tensor(&g, &g);
        let mut mult = Vec::new();
        for a in &self.elems {
            for b in &self.elems {
                mult.push((Elem::pair(Elem::atom(a), Elem::atom(b)), Elem::atom(self.mul(a, b))));
            }
        }
        let one = self.identity().expect("validated monoid has an identity");
        Ok(MonoidData {
            carrier: g.clone(),
            mult: inst.from_pairs(&gg, &g, &mult)?,
            unit: inst.from_pairs(&Obj::Unit, &g, &[(Elem::Star, Elem::atom(one))])?,
        })
    }
}

impl Group {
    pub fn parse(text: &str) -> Result<Group> {
        let (kw, m) = FiniteMonoid::parse(text)?;
        if kw != "group" {
            return Err(Error::Config(format!("expected a group table, found `{kw}`")));
        }
        Group::from_monoid(m)
    }

    pub fn from_monoid(m: FiniteMonoid) -> Result<Group> {
        let one = m.identity().expect("validated").to_string();
        for a in &m.elems {
            if !m.elems.iter().any(|b| m.mul(a, b) == one && m.mul(b, a) == one) {
                return Err(Error::Invalid(format!("{}: {a} has no inverse", m.name)));
            }
        }
        Ok(Group(m))
    }

    /// ℤ/n with elements `0..n`.
    pub fn cyclic(n: usize) -> Group {
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let m = FiniteMonoid::from_table(&format!("Z{n}"), &refs, |i, j| (i + j) % n).expect("cyclic table");
        Group(m)
    }

    /// The Klein four-group ℤ/2 × ℤ/2.
    pub fn klein() -> Group {
        let m = FiniteMonoid::from_table("V4", &["e", "a", "b", "c"], |i, j| i ^ j).expect("klein table");
        Group(m)
    }

    pub fn trivial() -> Group {
        Group::cyclic(1)
    }

    pub fn monoid(&self) -> &FiniteMonoid {
        &self.0
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn elems(&self) -> &[String] {
        &self.0.elems
    }

    pub fn order(&self) -> usize {
        self.0.elems.len()
    }

    pub fn mul(&self, a: &str, b: &str) -> &str {
        self.0.mul(a, b)
    }

    pub fn identity(&self) -> &str {
        self.0.identity().expect("group has identity")
    }

    pub fn inv(&self, a: &str) -> &str {
        let one = self.identity();
        self.0
            .elems
            .iter()
            .find(|b| self.mul(a, b) == one)
            .expect("group has inverses")
    }

    pub fn carrier(&self) -> Obj {
        self.0.carrier()
    }

    pub fn to_text(&self) -> String {
        self.0.to_text("group")
    }
}

/// The Hopf monoid induced by a group: ∇ = {((g,h),gh)}, u = {(∗,1)},
/// Δ = {(g,(g,g))}, e = {(g,∗)}, S = {(g,g⁻¹)}. In FinSet these are
/// the group operations, in FinRel their graphs, in MatQ the group algebra.
pub fn group_hopf<I: Instance>(inst: &I, g: &Group) -> Result<HopfMonoidData<I::Mor>> {
    let h = g.carrier();
    let monoid = g.monoid().monoid_data(inst)?;
    let atoms: Vec<Elem> = g.elems().iter().map(|e| Elem::atom(e)).collect();
    let comult: Vec<(Elem, Elem)> = atoms
        .iter()
        .map(|a| (a.clone(), Elem::pair(a.clone(), a.clone())))
        .collect();
    let counit: Vec<(Elem, Elem)> = atoms.iter().map(|a| (a.clone(), Elem::Star)).collect();
    let anti: Vec<(Elem, Elem)> = g
        .elems()
        .iter()
        .map(|a| (Elem::atom(a), Elem::atom(g.inv(a))))
        .collect();
    Ok(HopfMonoidData {
        bimonoid: BimonoidData {
            monoid,
            comonoid: ComonoidData {
                carrier: h.clone(),
                comult: inst.from_pairs(&h, &Obj::tensor(&h, &h), &comult)?,
                counit: inst.from_pairs(&h, &Obj::Unit, &counit)?,
            },
        },
        antipode: inst.from_pairs(&h, &h, &anti)?,
    })
}

/// The FinRel relations of a group, listed as displayed sets.
pub fn group_to_rel_hopf(inst: &crate::instances::FinRel, g: &Group) -> Result<HopfMonoidData<crate::instances::Rel>> {
    group_hopf(inst, g)
}

/// The group algebra K[G] in MatQ.
pub fn group_algebra(inst: &crate::instances::MatQ, g: &Group) -> Result<HopfMonoidData<crate::instances::Mat>> {
    group_hopf(inst, g)
}

/// Associativity and both unit laws.
pub fn monoid_laws<I: Instance>(ck: &mut Checker<'_, I>, tag: &str, m: &MonoidData<I::Mor>) {
    let inst = ck.inst;
    let a = &m.carrier;
    ck.paths(format!("{tag}monoid-assoc"), MONOID_ANCHOR, || {
        Ok((
            vec![inst.lwhisker(a, &m.mult)?, m.mult.clone()],
            vec![inst.alpha(a, a, a)?, inst.rwhisker(&m.mult, a)?, m.mult.clone()],
        ))
    });
    ck.paths(format!("{tag}monoid-left-unit"), MONOID_ANCHOR, || {
        Ok((vec![inst.rwhisker(&m.unit, a)?, m.mult.clone()], vec![inst.lunit(a)?]))
    });
    ck.paths(format!("{tag}monoid-right-unit"), MONOID_ANCHOR, || {
        Ok((vec![inst.lwhisker(a, &m.unit)?, m.mult.clone()], vec![inst.runit(a)?]))
    });
}

pub fn commutativity<I: Instance>(ck: &mut Checker<'_, I>, tag: &str, m: &MonoidData<I::Mor>) {
    let inst = ck.inst;
    let a = &m.carrier;
    ck.paths(format!("{tag}monoid-commutative"), MONOID_ANCHOR, || {
        Ok((vec![inst.sym(a, a)?, m.mult.clone()], vec![m.mult.clone()]))
    });
}

/// Coassociativity and both counit laws.
pub fn comonoid_laws<I: Instance>(ck: &mut Checker<'_, I>, tag: &str, c: &ComonoidData<I::Mor>) {
    let inst = ck.inst;
    let a = &c.carrier;
    ck.paths(format!("{tag}comonoid-coassoc"), COMONOID_ANCHOR, || {
        Ok((
            vec![c.comult.clone(), inst.lwhisker(a, &c.comult)?, inst.alpha(a, a, a)?],
            vec![c.comult.clone(), inst.rwhisker(&c.comult, a)?],
        ))
    });
    ck.paths(format!("{tag}comonoid-left-counit"), COMONOID_ANCHOR, || {
        Ok((
            vec![c.comult.clone(), inst.rwhisker(&c.counit, a)?, inst.lunit(a)?],
            vec![inst.id(a)?],
        ))
    });
    ck.paths(format!("{tag}comonoid-right-counit"), COMONOID_ANCHOR, || {
        Ok((
            vec![c.comult.clone(), inst.lwhisker(a, &c.counit)?, inst.runit(a)?],
            vec![inst.id(a)?],
        ))
    });
}

pub fn cocommutativity<I: Instance>(ck: &mut Checker<'_, I>, tag: &str, c: &ComonoidData<I::Mor>) {
    let inst = ck.inst;
    let a = &c.carrier;
    ck.paths(format!("{tag}comonoid-cocommutative"), COMONOID_ANCHOR, || {
        Ok((vec![c.comult.clone(), inst.sym(a, a)?], vec![c.comult.clone()]))
    });
}

/// The four compatibility diagrams between ∇, u and Δ, e.
pub fn bimonoid_laws<I: Instance>(ck: &mut Checker<'_, I>, tag: &str, b: &BimonoidData<I::Mor>) {
    let inst = ck.inst;
    let (m, c) = (&b.monoid, &b.comonoid);
    let a = &m.carrier;
    ck.paths(format!("{tag}bimonoid-mult-comult"), BIMONOID_ANCHOR, || {
        Ok((
            vec![
                inst.par(&c.comult, &c.comult)?,
                inst.interchange(a, a, a, a)?,
                inst.par(&m.mult, &m.mult)?,
            ],
            vec![m.mult.clone(), c.comult.clone()],
        ))
    });
    ck.paths(format!("{tag}bimonoid-unit-counit"), BIMONOID_ANCHOR, || {
        Ok((vec![m.unit.clone(), c.counit.clone()], vec![inst.id(&Obj::Unit)?]))
    });
    ck.paths(format!("{tag}bimonoid-mult-counit"), BIMONOID_ANCHOR, || {
        Ok((
            vec![m.mult.clone(), c.counit.clone()],
            vec![inst.par(&c.counit, &c.counit)?, inst.lunit(&Obj::Unit)?],
        ))
    });
    ck.paths(format!("{tag}bimonoid-unit-comult"), BIMONOID_ANCHOR, || {
        Ok((
            vec![m.unit.clone(), c.comult.clone()],
            vec![inst.lunit_inv(&Obj::Unit)?, inst.par(&m.unit, &m.unit)?],
        ))
    });
}

/// `Δ;(1⊗S);∇ = e;u = Δ;(S⊗1);∇`.
pub fn antipode_laws<I: Instance>(ck: &mut Checker<'_, I>, tag: &str, h: &HopfMonoidData<I::Mor>) {
    let inst = ck.inst;
    let a = h.carrier();
    ck.paths(format!("{tag}hopf-right-antipode"), HOPF_ANCHOR, || {
        Ok((
            vec![h.comult().clone(), inst.lwhisker(a, &h.antipode)?, h.mult().clone()],
            vec![h.counit().clone(), h.unit().clone()],
        ))
    });
    ck.paths(format!("{tag}hopf-left-antipode"), HOPF_ANCHOR, || {
        Ok((
            vec![h.comult().clone(), inst.rwhisker(&h.antipode, a)?, h.mult().clone()],
            vec![h.counit().clone(), h.unit().clone()],
        ))
    });
}

/// For cocommutative Hopf monoids the antipode is a comonoid morphism.
pub fn antipode_comonoid_morphism<I: Instance>(ck: &mut Checker<'_, I>, tag: &str, h: &HopfMonoidData<I::Mor>) {
    let inst = ck.inst;
    ck.paths(format!("{tag}antipode-preserves-comult"), HOPF_ANCHOR, || {
        Ok((
            vec![h.comult().clone(), inst.par(&h.antipode, &h.antipode)?],
            vec![h.antipode.clone(), h.comult().clone()],
        ))
    });
    ck.paths(format!("{tag}antipode-preserves-counit"), HOPF_ANCHOR, || {
        Ok((vec![h.antipode.clone(), h.counit().clone()], vec![h.counit().clone()]))
    });
}

/// Monoid, comonoid, bimonoid and antipode suites.
pub fn check_hopf<I: Instance>(inst: &I, h: &HopfMonoidData<I::Mor>, probe: Probe) -> SuiteResult {
    let mut ck = Checker::new(inst, probe);
    hopf_diagrams(&mut ck, "", h);
    ck.finish("hopf-laws", HOPF_ANCHOR)
}

/// Adds every Hopf-monoid diagram (including cocommutativity and the
/// antipode comonoid-morphism squares) to a running checker.
pub fn hopf_diagrams<I: Instance>(ck: &mut Checker<'_, I>, tag: &str, h: &HopfMonoidData<I::Mor>) {
    monoid_laws(ck, tag, &h.bimonoid.monoid);
    comonoid_laws(ck, tag, &h.bimonoid.comonoid);
    cocommutativity(ck, tag, &h.bimonoid.comonoid);
    bimonoid_laws(ck, tag, &h.bimonoid);
    antipode_laws(ck, tag, h);
    antipode_comonoid_morphism(ck, tag, h);
}

/// Bimonoid diagrams only.
pub fn check_bimonoid<I: Instance>(inst: &I, b: &BimonoidData<I::Mor>, probe: Probe) -> SuiteResult {
    let mut ck = Checker::new(inst, probe);
    monoid_laws(&mut ck, "", &b.monoid);
    comonoid_laws(&mut ck, "", &b.comonoid);
    bimonoid_laws(&mut ck, "", b);
    ck.finish("bimonoid", BIMONOID_ANCHOR)
}

/// Every endomorphism of the carrier satisfying both antipode laws.
pub fn antipode_candidates<I: Enumerable>(inst: &I, b: &BimonoidData<I::Mor>) -> Result<Vec<I::Mor>> {
    let a = &b.monoid.carrier;
    let probe = Probe::exhaustive(0);
    let target = inst.then(&b.comonoid.counit, &b.monoid.unit)?;
    let mut out = Vec::new();
    for s in inst.all_maps(a, a)? {
        let right = inst.path(&[b.comonoid.comult.clone(), inst.lwhisker(a, &s)?, b.monoid.mult.clone()])?;
        if inst.compare(&right, &target, &probe)?.is_some() {
            continue;
        }
        let left = inst.path(&[b.comonoid.comult.clone(), inst.rwhisker(&s, a)?, b.monoid.mult.clone()])?;
        if inst.compare(&left, &target, &probe)?.is_none() {
            out.push(s);
        }
    }
    Ok(out)
}

/// Exhaustive antipode search; errors if more than one candidate is found,
/// since antipodes are unique.
pub fn antipode_unique<I: Enumerable>(inst: &I, b: &BimonoidData<I::Mor>) -> Result<Option<I::Mor>> {
    let mut c = antipode_candidates(inst, b)?;
    if c.len() > 1 {
        return Err(Error::Invalid(format!(
            "{} antipodes found; antipodes are unique",
            c.len()
        )));
    }
    Ok(c.pop())
}

/// Pairs a monoid in a Cartesian instance with the diagonal comonoid.
pub fn cartesian_monoid_to_bimonoid<I: Cartesian>(inst: &I, m: &MonoidData<I::Mor>) -> Result<BimonoidData<I::Mor>> {
    let (comult, counit) = cartesian_comonoid(inst, &m.carrier)?;
    Ok(BimonoidData {
        monoid: m.clone(),
        comonoid: ComonoidData {
            carrier: m.carrier.clone(),
            comult,
            counit,
        },
    })
}

/// Every comonoid structure on a finite carrier (exhaustive over all
/// comultiplications and counits), for uniqueness checks.
pub fn all_comonoids<I: Enumerable>(inst: &I, a: &Obj) -> Result<Vec<ComonoidData<I::Mor>>> {
    let probe = Probe::exhaustive(0);
    let mut out = Vec::new();
    let counits = inst.all_maps(a, &Obj::Unit)?;
    for comult in inst.all_maps(a, &Obj::tensor(a, a))? {
        for counit in &counits {
            let c = ComonoidData {
                carrier: a.clone(),
                comult: comult.clone(),
                counit: counit.clone(),
            };
            let mut ck = Checker::new(inst, probe);
            comonoid_laws(&mut ck, "", &c);
            if ck.results().iter().all(|r| r.status == crate::kernel::Status::Pass) {
                out.push(c);
            }
        }
    }
    Ok(out)
}

/// Fails with a witness when Δ is not cocommutative.
pub fn require_cocommutative<I: Instance>(inst: &I, c: &ComonoidData<I::Mor>, probe: Probe) -> Result<()> {
    let lhs = inst.then(&c.comult, &inst.sym(&c.carrier, &c.carrier)?)?;
    match inst.compare(&lhs, &c.comult, &probe)? {
        None => Ok(()),
        Some(w) => Err(Error::Invalid(format!(
            "comultiplication is not cocommutative at {}: {} vs {}",
            w.input, w.lhs, w.rhs
        ))),
    }
}

/// A one-line witness for counting checks.
pub fn count_witness(what: &str, found: usize, expected: usize) -> Option<Witness> {
    (found != expected).then(|| Witness::new(what, found.to_string(), expected.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        let g = Group::cyclic(3);
        let back = Group::parse(&g.to_text()).unwrap();
        assert_eq!(back, g);
        assert_eq!(g.inv("1"), "2");
    }

    #[test]
    fn parse_rejects_partial_table() {
        let err = Group::parse("group z2 2\n0 0 0\n0 1 1\n1 0 1\n").unwrap_err();
        assert!(matches!(err, Error::Config(_)));
    }

    #[test]
    fn parse_rejects_non_group() {
        let text = "group and 2\n0 0 0\n0 1 0\n1 0 0\n1 1 1\n";
        assert!(matches!(Group::parse(text).unwrap_err(), Error::Invalid(_)));
    }

    #[test]
    fn parse_rejects_nonassociative() {
        // (a·a)·b = b but a·(a·b) = e
        let text = "group bad 3\ne e e\ne a a\ne b b\na e a\nb e b\na a e\nb b e\na b a\nb a b\n";
        assert!(Group::parse(text).is_err());
    }

    #[test]
    fn klein_is_elementary_abelian() {
        let v = Group::klein();
        for a in v.elems() {
            assert_eq!(v.inv(a), a);
        }
    }
}
