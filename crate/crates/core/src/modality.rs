//! Coalgebra modalities and monoidal coalgebra modalities: the identity
//! modality on Cartesian instances, the multiset modality on relations,
//! induced comonoids on coalgebras and the cofree-comonoid factorization.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hopf::{cocommutativity, comonoid_laws, ComonoidData};
use crate::instances::{Enumerable, FinRel, Rel, Sample};
use crate::kernel::{bags, Bounds, Checker, Elem, Instance, Morphism, Obj, Probe, SuiteResult, Witness};
use crate::monadic::{
    coalgebra_laws, coalgebra_morphism_witness, comonad_laws, em_cotensor, family, family2, manual_clone,
    monoidal_comonad_laws, naturality, unit_coalgebra, AlgebraData, CoalgebraData, ComonadData, Family, Family2,
    Functor, MonadData, MonoidalComonadData, Mor,
};
use crate::monoidal::{cartesian_comonoid, Cartesian, Smc};

pub const MODALITY_ANCHOR: &str = "coalgebra modality: each !A is a cocommutative comonoid and δ preserves it";
pub const MONOIDAL_MODALITY_ANCHOR: &str =
    "monoidal coalgebra modality: Δ and e are monoidal transformations and !-coalgebra morphisms";
pub const INDUCED_ANCHOR: &str = "every !-coalgebra carries an induced cocommutative comonoid";
pub const EM_CARTESIAN_ANCHOR: &str = "the category of !-coalgebras is Cartesian monoidal";
pub const LAFONT_ANCHOR: &str = "free exponential modality: !A is the cofree cocommutative comonoid";

/// A comonad whose objects `!A` carry natural cocommutative comonoids.
pub struct CoalgebraModalityData<I: Instance> {
    pub comonad: ComonadData<I>,
    pub comult: Family<I>,
    pub counit: Family<I>,
}
manual_clone!(CoalgebraModalityData {
    comonad,
    comult,
    counit
});

/// A coalgebra modality that is also a symmetric monoidal comonad.
pub struct MonoidalCoalgebraModalityData<I: Instance> {
    pub modality: CoalgebraModalityData<I>,
    pub m: Family2<I>,
    pub m_k: Mor<I>,
}
manual_clone!(MonoidalCoalgebraModalityData { modality, m, m_k });

impl<I: Instance> CoalgebraModalityData<I> {
    pub fn bang(&self) -> &Functor<I> {
        &self.comonad.bang
    }
    pub fn comult(&self, inst: &I, a: &Obj) -> Result<Mor<I>> {
        (self.comult)(inst, a)
    }
    pub fn counit(&self, inst: &I, a: &Obj) -> Result<Mor<I>> {
        (self.counit)(inst, a)
    }
    pub fn delta(&self, inst: &I, a: &Obj) -> Result<Mor<I>> {
        self.comonad.delta(inst, a)
    }
    pub fn eps(&self, inst: &I, a: &Obj) -> Result<Mor<I>> {
        self.comonad.eps(inst, a)
    }
    /// `(!A, Δ_A, e_A)`.
    pub fn comonoid(&self, inst: &I, a: &Obj) -> Result<ComonoidData<Mor<I>>> {
        Ok(ComonoidData {
            carrier: self.bang().obj(a),
            comult: self.comult(inst, a)?,
            counit: self.counit(inst, a)?,
        })
    }
}

impl<I: Instance> MonoidalCoalgebraModalityData<I> {
    pub fn monoidal_comonad(&self) -> MonoidalComonadData<I> {
        MonoidalComonadData {
            comonad: self.modality.comonad.clone(),
            m: self.m.clone(),
            m_k: self.m_k.clone(),
        }
    }
    pub fn m(&self, inst: &I, a: &Obj, b: &Obj) -> Result<Mor<I>> {
        (self.m)(inst, a, b)
    }
    pub fn bang(&self) -> &Functor<I> {
        self.modality.bang()
    }
}

/// On a Cartesian instance: `! = 1`, `δ = ε = 1`, `m = 1⊗1`, `m_K = 1_K`,
/// with the diagonal comonoids.
pub fn identity_modality<I: Cartesian>(inst: &I) -> Result<MonoidalCoalgebraModalityData<I>> {
    Ok(MonoidalCoalgebraModalityData {
        modality: CoalgebraModalityData {
            comonad: ComonadData::identity(),
            comult: family(|i: &I, a| Ok(cartesian_comonoid(i, a)?.0)),
            counit: family(|i: &I, a| i.terminal(a)),
        },
        m: family2(|i: &I, a, b| i.id(&Obj::tensor(a, b))),
        m_k: inst.id(&Obj::Unit)?,
    })
}

/// The seven relations of the multiset modality.
///
/// With `allow_empty = false` the splittings in δ and Δ omit empty parts,
/// which breaks the counit laws.
pub fn multiset_modality(inst: &FinRel, allow_empty: bool) -> MonoidalCoalgebraModalityData<FinRel> {
    let bang = Functor::new("!", Obj::bang, |i: &FinRel, f: &Rel| Ok(i.bang(f)));
    let delta = family(move |_: &FinRel, a| Ok(multiset_delta(a, allow_empty)));
    let eps = family(|_: &FinRel, a| Ok(multiset_eps(a)));
    let comult = family(move |_: &FinRel, a| Ok(multiset_comult(a, allow_empty)));
    let counit = family(|_: &FinRel, a| Ok(multiset_counit(a)));
    let m = family2(|_: &FinRel, a, b| Ok(multiset_m(a, b)));
    MonoidalCoalgebraModalityData {
        modality: CoalgebraModalityData {
            comonad: ComonadData { bang, delta, eps },
            comult,
            counit,
        },
        m,
        m_k: multiset_m_k(inst),
    }
}

/// `ε_X = {([x], x)}`.
pub fn multiset_eps(a: &Obj) -> Rel {
    Rel::lazy(
        &Obj::bang(a),
        a,
        Bounds::new(Some(|d: usize| d.saturating_sub(1)), |c: usize| c.saturating_add(1)),
        |b, _| match b.as_bag() {
            Some([x]) => Ok(vec![x.clone()]),
            _ => Ok(vec![]),
        },
    )
}

/// `δ_X = {(B, [B₁,…,Bₙ]) : B₁ ⊔ … ⊔ Bₙ = B}`, parts possibly empty.
pub fn multiset_delta(a: &Obj, allow_empty: bool) -> Rel {
    Rel::lazy(
        &Obj::bang(a),
        &Obj::bang(&Obj::bang(a)),
        Bounds::unbounded(|c| c),
        move |b, cap| {
            let Some(items) = b.as_bag() else {
                return Ok(vec![]);
            };
            let mut out = Vec::new();
            for parts in bags::partitions(items) {
                let base = parts.len() + b.degree() - items.len();
                let parts: Vec<Elem> = parts.into_iter().map(Elem::bag).collect();
                let extra = if allow_empty { cap.saturating_sub(base) } else { 0 };
                for k in 0..=extra {
                    let mut p = parts.clone();
                    p.extend(std::iter::repeat_n(Elem::empty_bag(), k));
                    out.push(Elem::bag(p));
                }
            }
            Ok(out)
        },
    )
}

/// `Δ_X = {(B, (B₁,B₂)) : B₁ ⊔ B₂ = B}`.
pub fn multiset_comult(a: &Obj, allow_empty: bool) -> Rel {
    let bx = Obj::bang(a);
    Rel::lazy(&bx, &Obj::tensor(&bx, &bx), Bounds::preserving(), move |b, _| {
        let Some(items) = b.as_bag() else {
            return Ok(vec![]);
        };
        Ok(bags::two_splittings(items)
            .into_iter()
            .filter(|(l, r)| allow_empty || (!l.is_empty() && !r.is_empty()))
            .map(|(l, r)| Elem::pair(Elem::bag(l), Elem::bag(r)))
            .collect())
    })
}

/// `e_X = {(∅, ∗)}`.
pub fn multiset_counit(a: &Obj) -> Rel {
    Rel::lazy(&Obj::bang(a), &Obj::Unit, Bounds::constant(0, 0), |b, _| {
        Ok(if b.as_bag() == Some(&[]) {
            vec![Elem::Star]
        } else {
            vec![]
        })
    })
}

/// `m_{X,Y}`: two bags of equal size to the bag of pairs along a matching.
pub fn multiset_m(a: &Obj, b: &Obj) -> Rel {
    let dom = Obj::tensor(&Obj::bang(a), &Obj::bang(b));
    Rel::lazy(
        &dom,
        &Obj::bang(&Obj::tensor(a, b)),
        Bounds::new(Some(|d: usize| d), |c: usize| c.saturating_mul(2)),
        |x, _| {
            let Some((l, r)) = x.as_pair() else {
                return Ok(vec![]);
            };
            match (l.as_bag(), r.as_bag()) {
                (Some(l), Some(r)) => Ok(bags::zips(l, r).into_iter().map(Elem::bag).collect()),
                _ => Ok(vec![]),
            }
        },
    )
}

/// `m_K = {(∗, [∗,…,∗])}` for every size.
pub fn multiset_m_k(_inst: &FinRel) -> Rel {
    Rel::lazy(
        &Obj::Unit,
        &Obj::bang(&Obj::Unit),
        Bounds::unbounded(|_| 0),
        |_, cap| Ok((0..=cap).map(|n| Elem::bag(vec![Elem::Star; n])).collect()),
    )
}

/// The "copies" coalgebra `ω = {(g, n·[g]) : n ≥ 0}` on a finite carrier.
/// With `drop_singleton` the pair for `n = 1` is omitted.
pub fn copies_coalgebra(g: &Obj, drop_singleton: bool) -> CoalgebraData<Rel> {
    let coaction = Rel::lazy(g, &Obj::bang(g), Bounds::unbounded(|_| 0), move |x, cap| {
        Ok((0..=cap)
            .filter(|&n| !(drop_singleton && n == 1))
            .map(|n| Elem::bag(vec![x.clone(); n]))
            .collect())
    });
    CoalgebraData {
        carrier: g.clone(),
        coaction,
    }
}

/// The comonad, comonoid and comonoid-morphism diagrams of a coalgebra
/// modality.
pub fn coalgebra_modality_laws<I: Instance>(
    ck: &mut Checker<'_, I>,
    tag: &str,
    md: &CoalgebraModalityData<I>,
    objs: &[Obj],
) {
    let inst = ck.inst;
    comonad_laws(ck, tag, &md.comonad, objs);
    for a in objs {
        let ba = md.bang().obj(a);
        match md.comonoid(inst, a) {
            Ok(c) => {
                let t = format!("{tag}!{a}:");
                comonoid_laws(ck, &t, &c);
                cocommutativity(ck, &t, &c);
            }
            Err(e) => {
                ck.fact(format!("{tag}comonoid[{a}]"), MODALITY_ANCHOR, || Err(e));
            }
        }
        ck.paths(format!("{tag}delta-preserves-comult[{a}]"), MODALITY_ANCHOR, || {
            Ok((
                vec![md.delta(inst, a)?, md.comult(inst, &ba)?],
                vec![md.comult(inst, a)?, inst.par(&md.delta(inst, a)?, &md.delta(inst, a)?)?],
            ))
        });
        ck.paths(format!("{tag}delta-preserves-counit[{a}]"), MODALITY_ANCHOR, || {
            Ok((
                vec![md.delta(inst, a)?, md.counit(inst, &ba)?],
                vec![md.counit(inst, a)?],
            ))
        });
    }
}

/// The monoidal-comonad diagrams plus the "monoidal transformations" and
/// "!-coalgebra morphisms" diagrams for Δ and e.
pub fn monoidal_modality_laws<I: Instance>(
    ck: &mut Checker<'_, I>,
    tag: &str,
    mmd: &MonoidalCoalgebraModalityData<I>,
    objs: &[Obj],
) {
    let inst = ck.inst;
    let md = &mmd.modality;
    let k = Obj::Unit;
    monoidal_comonad_laws(ck, tag, &mmd.monoidal_comonad(), objs);
    for a in objs {
        let ba = md.bang().obj(a);
        for b in objs {
            let bb = md.bang().obj(b);
            ck.paths(
                format!("{tag}comult-monoidal[{a},{b}]"),
                MONOIDAL_MODALITY_ANCHOR,
                || {
                    Ok((
                        vec![mmd.m(inst, a, b)?, md.comult(inst, &Obj::tensor(a, b))?],
                        vec![
                            inst.par(&md.comult(inst, a)?, &md.comult(inst, b)?)?,
                            inst.interchange(&ba, &ba, &bb, &bb)?,
                            inst.par(&mmd.m(inst, a, b)?, &mmd.m(inst, a, b)?)?,
                        ],
                    ))
                },
            );
            ck.paths(
                format!("{tag}counit-monoidal[{a},{b}]"),
                MONOIDAL_MODALITY_ANCHOR,
                || {
                    Ok((
                        vec![mmd.m(inst, a, b)?, md.counit(inst, &Obj::tensor(a, b))?],
                        vec![inst.par(&md.counit(inst, a)?, &md.counit(inst, b)?)?, inst.lunit(&k)?],
                    ))
                },
            );
        }
        ck.paths(
            format!("{tag}comult-coalgebra-map[{a}]"),
            MONOIDAL_MODALITY_ANCHOR,
            || {
                Ok((
                    vec![
                        md.comult(inst, a)?,
                        inst.par(&md.delta(inst, a)?, &md.delta(inst, a)?)?,
                        mmd.m(inst, &ba, &ba)?,
                    ],
                    vec![md.delta(inst, a)?, md.bang().mor(inst, &md.comult(inst, a)?)?],
                ))
            },
        );
        ck.paths(
            format!("{tag}counit-coalgebra-map[{a}]"),
            MONOIDAL_MODALITY_ANCHOR,
            || {
                Ok((
                    vec![md.counit(inst, a)?, mmd.m_k.clone()],
                    vec![md.delta(inst, a)?, md.bang().mor(inst, &md.counit(inst, a)?)?],
                ))
            },
        );
    }
    ck.paths(format!("{tag}comult-monoidal-unit"), MONOIDAL_MODALITY_ANCHOR, || {
        Ok((
            vec![mmd.m_k.clone(), md.comult(inst, &k)?],
            vec![inst.lunit_inv(&k)?, inst.par(&mmd.m_k, &mmd.m_k)?],
        ))
    });
    ck.paths(format!("{tag}counit-monoidal-unit"), MONOIDAL_MODALITY_ANCHOR, || {
        Ok((vec![mmd.m_k.clone(), md.counit(inst, &k)?], vec![inst.id(&k)?]))
    });
}

/// Naturality of ε, δ, Δ and e on the given maps.
pub fn modality_naturality<I: Instance>(
    ck: &mut Checker<'_, I>,
    tag: &str,
    md: &CoalgebraModalityData<I>,
    maps: &[Mor<I>],
) {
    let bang = md.bang().clone();
    let (b1, b2) = (bang.clone(), bang.clone());
    let bangbang = Functor::new(
        "!!",
        move |x| b1.obj(&b1.obj(x)),
        move |i: &I, f| b2.mor(i, &b2.mor(i, f)?),
    );
    let (b3, b4) = (bang.clone(), bang.clone());
    let doubled = Functor::new(
        "!⊗!",
        move |x| Obj::tensor(&b3.obj(x), &b3.obj(x)),
        move |i: &I, f| {
            let bf = b4.mor(i, f)?;
            i.par(&bf, &bf)
        },
    );
    let constant = Functor::new("K", |_| Obj::Unit, |i: &I, _| i.id(&Obj::Unit));
    let id = Functor::identity();
    naturality(
        ck,
        &format!("{tag}eps"),
        MODALITY_ANCHOR,
        &bang,
        &id,
        &md.comonad.eps,
        maps,
    );
    naturality(
        ck,
        &format!("{tag}delta"),
        MODALITY_ANCHOR,
        &bang,
        &bangbang,
        &md.comonad.delta,
        maps,
    );
    naturality(
        ck,
        &format!("{tag}comult"),
        MODALITY_ANCHOR,
        &bang,
        &doubled,
        &md.comult,
        maps,
    );
    naturality(
        ck,
        &format!("{tag}counit"),
        MODALITY_ANCHOR,
        &bang,
        &constant,
        &md.counit,
        maps,
    );
}

/// Sampled maps between the given finite objects, for naturality squares.
pub fn sample_maps<I: Sample>(inst: &I, objs: &[Obj], samples: usize, seed: u64) -> Vec<Mor<I>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for k in 0..samples {
        let a = &objs[k % objs.len()];
        let b = &objs[(k / objs.len() + k) % objs.len()];
        if let Ok(f) = inst.sample(a, b, &mut rng) {
            out.push(f);
        }
    }
    out
}

/// The full modality suite: comonad, comonoid, monoidal and naturality
/// diagrams over the given objects.
pub fn check_modality<I: Sample>(
    inst: &I,
    mmd: &MonoidalCoalgebraModalityData<I>,
    objs: &[Obj],
    samples: usize,
    seed: u64,
    probe: Probe,
) -> SuiteResult {
    let mut ck = Checker::new(inst, probe);
    coalgebra_modality_laws(&mut ck, "", &mmd.modality, objs);
    monoidal_modality_laws(&mut ck, "", mmd, objs);
    let maps = sample_maps(inst, objs, samples, seed);
    modality_naturality(&mut ck, "", &mmd.modality, &maps);
    ck.finish("modality", MODALITY_ANCHOR)
}

/// `Δ^ω = ω;Δ_A;(ε⊗ε)` and `e^ω = ω;e_A`.
pub fn induced_comonoid<I: Instance>(
    inst: &I,
    md: &CoalgebraModalityData<I>,
    x: &CoalgebraData<Mor<I>>,
) -> Result<ComonoidData<Mor<I>>> {
    let a = &x.carrier;
    let eps = md.eps(inst, a)?;
    Ok(ComonoidData {
        carrier: a.clone(),
        comult: inst.path(&[x.coaction.clone(), md.comult(inst, a)?, inst.par(&eps, &eps)?])?,
        counit: inst.then(&x.coaction, &md.counit(inst, a)?)?,
    })
}

/// The induced comonoid is a cocommutative comonoid and ω is a comonoid
/// morphism into `(!A, Δ_A, e_A)`.
pub fn induced_comonoid_laws<I: Instance>(
    ck: &mut Checker<'_, I>,
    tag: &str,
    md: &CoalgebraModalityData<I>,
    x: &CoalgebraData<Mor<I>>,
) {
    let inst = ck.inst;
    let a = &x.carrier;
    let c = match induced_comonoid(inst, md, x) {
        Ok(c) => c,
        Err(e) => {
            ck.fact(format!("{tag}induced-comonoid[{a}]"), INDUCED_ANCHOR, || Err(e));
            return;
        }
    };
    comonoid_laws(ck, tag, &c);
    cocommutativity(ck, tag, &c);
    ck.paths(format!("{tag}coaction-preserves-comult[{a}]"), INDUCED_ANCHOR, || {
        Ok((
            vec![x.coaction.clone(), md.comult(inst, a)?],
            vec![c.comult.clone(), inst.par(&x.coaction, &x.coaction)?],
        ))
    });
    ck.paths(format!("{tag}coaction-preserves-counit[{a}]"), INDUCED_ANCHOR, || {
        Ok((vec![x.coaction.clone(), md.counit(inst, a)?], vec![c.counit.clone()]))
    });
}

/// Checks the Cartesian structure of the coalgebra category on sampled
/// coalgebra morphisms `f: C → A`, `g: C → B`: the pairing `Δ^γ;(f⊗g)` is
/// a coalgebra morphism into `A ⊗ᵐ B`, projects back to `f` and `g`,
/// and (when `unique` is set) is the only such coalgebra morphism.
/// Coalgebra morphisms are also checked to be comonoid morphisms for the
/// induced comonoids.
pub fn em_cartesian_laws<I: Enumerable>(
    ck: &mut Checker<'_, I>,
    tag: &str,
    mmd: &MonoidalCoalgebraModalityData<I>,
    c: &CoalgebraData<Mor<I>>,
    a: &CoalgebraData<Mor<I>>,
    b: &CoalgebraData<Mor<I>>,
    unique: bool,
) {
    let inst = ck.inst;
    let probe = ck.probe;
    let md = &mmd.modality;
    let mc = mmd.monoidal_comonad();
    let co = &md.comonad;
    let is_coalg_map = |f: &Mor<I>, x: &CoalgebraData<Mor<I>>, y: &CoalgebraData<Mor<I>>| -> Result<bool> {
        Ok(coalgebra_morphism_witness(inst, co, f, x, y, &probe)?.is_none())
    };
    let fs: Vec<Mor<I>> = match inst.all_maps(&c.carrier, &a.carrier) {
        Ok(v) => v
            .into_iter()
            .filter(|f| is_coalg_map(f, c, a).unwrap_or(false))
            .collect(),
        Err(e) => {
            ck.fact(
                format!("{tag}coalgebra-maps[{}]", c.carrier),
                EM_CARTESIAN_ANCHOR,
                || Err(e),
            );
            return;
        }
    };
    let gs: Vec<Mor<I>> = match inst.all_maps(&c.carrier, &b.carrier) {
        Ok(v) => v
            .into_iter()
            .filter(|g| is_coalg_map(g, c, b).unwrap_or(false))
            .collect(),
        Err(e) => {
            ck.fact(
                format!("{tag}coalgebra-maps[{}]", c.carrier),
                EM_CARTESIAN_ANCHOR,
                || Err(e),
            );
            return;
        }
    };
    let ab = match em_cotensor(inst, &mc, a, b) {
        Ok(x) => x,
        Err(e) => {
            ck.fact(format!("{tag}cotensor"), EM_CARTESIAN_ANCHOR, || Err(e));
            return;
        }
    };
    let (ca, cb) = (&a.carrier, &b.carrier);
    let ind_c = induced_comonoid(inst, md, c);
    let ind_a = induced_comonoid(inst, md, a);
    for (k, f) in fs.iter().enumerate() {
        ck.fact(
            format!("{tag}coalgebra-map-is-comonoid-map[{}→{}#{k}]", c.carrier, ca),
            INDUCED_ANCHOR,
            || {
                let (ic, ia) = (ind_c.clone()?, ind_a.clone()?);
                let l = inst.then(f, &ia.comult)?;
                let r = inst.then(&ic.comult, &inst.par(f, f)?)?;
                if let Some(w) = inst.compare(&l, &r, &probe)? {
                    return Ok(Some(w));
                }
                inst.compare(&inst.then(f, &ia.counit)?, &ic.counit, &probe)
            },
        );
    }
    let proj = || -> Result<(Mor<I>, Mor<I>)> {
        let ea = inst.then(&a.coaction, &md.counit(inst, ca)?)?;
        let eb = inst.then(&b.coaction, &md.counit(inst, cb)?)?;
        Ok((
            inst.then(&inst.lwhisker(ca, &eb)?, &inst.runit(ca)?)?,
            inst.then(&inst.rwhisker(&ea, cb)?, &inst.lunit(cb)?)?,
        ))
    };
    for (i, f) in fs.iter().enumerate() {
        for (j, g) in gs.iter().enumerate() {
            let label = format!("{}→{}⊗{}#{i},{j}", c.carrier, ca, cb);
            let pairing = || -> Result<Mor<I>> { inst.then(&ind_c.clone()?.comult, &inst.par(f, g)?) };
            ck.fact(
                format!("{tag}pairing-is-coalgebra-map[{label}]"),
                EM_CARTESIAN_ANCHOR,
                || coalgebra_morphism_witness(inst, co, &pairing()?, c, &ab, &probe),
            );
            ck.paths(format!("{tag}pairing-first[{label}]"), EM_CARTESIAN_ANCHOR, || {
                Ok((vec![pairing()?, proj()?.0], vec![f.clone()]))
            });
            ck.paths(format!("{tag}pairing-second[{label}]"), EM_CARTESIAN_ANCHOR, || {
                Ok((vec![pairing()?, proj()?.1], vec![g.clone()]))
            });
            if unique {
                ck.fact(format!("{tag}pairing-unique[{label}]"), EM_CARTESIAN_ANCHOR, || {
                    let (p1, p2) = proj()?;
                    let mut hits = 0usize;
                    for h in inst.all_maps(&c.carrier, &ab.carrier)? {
                        if inst.compare(&inst.then(&h, &p1)?, f, &probe)?.is_some()
                            || inst.compare(&inst.then(&h, &p2)?, g, &probe)?.is_some()
                        {
                            continue;
                        }
                        if coalgebra_morphism_witness(inst, co, &h, c, &ab, &probe)?.is_none() {
                            hits += 1;
                        }
                    }
                    Ok((hits != 1).then(|| Witness::new(label.clone(), format!("{hits} pairings"), "1")))
                });
            }
        }
    }
    let unit = unit_coalgebra(&mc);
    coalgebra_laws(ck, &format!("{tag}unit:"), co, &unit);
    coalgebra_laws(ck, &format!("{tag}cotensor:"), co, &ab);
}

/// Outcome of the cofree-comonoid factorization search.
pub struct LafontResult<M> {
    pub fhat: M,
    pub unique: bool,
    /// Number of comonoid morphisms `C → !A` examined.
    pub candidates: usize,
}

/// The comonoid morphism `f̂: C → !A` with `f̂;ε = f`, found by exhaustive
/// search. With `modules`, candidates must also be algebra morphisms
/// between the given algebras (factorization inside a module category).
/// Only finite sets make this search exhaustive; other instances are refused.
pub fn lafont_factorization<I: Enumerable>(
    inst: &I,
    md: &CoalgebraModalityData<I>,
    c: &ComonoidData<Mor<I>>,
    f: &Mor<I>,
    modules: Option<(&MonadData<I>, &AlgebraData<Mor<I>>, &AlgebraData<Mor<I>>)>,
) -> Result<LafontResult<Mor<I>>> {
    if inst.name() != "finset" {
        return Err(Error::Unsupported(format!(
            "unbounded search: cofree factorization is only decidable over finset, not {}",
            inst.name()
        )));
    }
    let probe = Probe::exhaustive(0);
    let a = f.cod().clone();
    let target = md.comonoid(inst, &a)?;
    let eps = md.eps(inst, &a)?;
    let mut candidates = 0usize;
    let mut hits = Vec::new();
    for h in inst.all_maps(&c.carrier, &target.carrier)? {
        let l = inst.then(&h, &target.comult)?;
        let r = inst.then(&c.comult, &inst.par(&h, &h)?)?;
        if inst.compare(&l, &r, &probe)?.is_some() {
            continue;
        }
        if inst
            .compare(&inst.then(&h, &target.counit)?, &c.counit, &probe)?
            .is_some()
        {
            continue;
        }
        if let Some((t, x, y)) = modules {
            let y_bang = AlgebraData {
                carrier: target.carrier.clone(),
                action: y.action.clone(),
            };
            if crate::monadic::algebra_morphism_witness(inst, t, &h, x, &y_bang, &probe)?.is_some() {
                continue;
            }
        }
        candidates += 1;
        if inst.compare(&inst.then(&h, &eps)?, f, &probe)?.is_none() {
            hits.push(h);
        }
    }
    let unique = hits.len() == 1;
    let fhat = hits
        .into_iter()
        .next()
        .ok_or_else(|| Error::Invalid(format!("no comonoid morphism factors {} → {}", f.dom(), f.cod())))?;
    Ok(LafontResult {
        fhat,
        unique,
        candidates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::FinSet;

    fn bag(xs: &[&str]) -> Elem {
        Elem::bag(xs.iter().map(|x| Elem::atom(x)).collect())
    }

    #[test]
    fn eps_relates_singletons_only() {
        let x = Obj::base("X", &["a"]);
        let e = multiset_eps(&x);
        assert!(e.contains(&bag(&["a"]), &Elem::atom("a")).unwrap());
        assert!(!e.contains(&bag(&["a", "a"]), &Elem::atom("a")).unwrap());
    }

    #[test]
    fn comult_two_splittings() {
        let x = Obj::base("X", &["a"]);
        let d = multiset_comult(&x, true);
        let img: Vec<String> = d
            .image(&bag(&["a", "a"]), 10)
            .unwrap()
            .iter()
            .map(Elem::encode)
            .collect();
        assert_eq!(img, vec!["([],[a,a])", "([a],[a])", "([a,a],[])"]);
    }

    #[test]
    fn delta_degree_bounded_image() {
        let x = Obj::base("X", &["a"]);
        let d = multiset_delta(&x, true);
        // [a] has degree 1; [[a]] has degree 2, [[a],[]] degree 3
        let mut img: Vec<String> = d.image(&bag(&["a"]), 3).unwrap().iter().map(Elem::encode).collect();
        img.sort();
        assert_eq!(img, vec!["[[],[a]]", "[[a]]"]);
        let mut img0: Vec<String> = d
            .image(&Elem::empty_bag(), 2)
            .unwrap()
            .iter()
            .map(Elem::encode)
            .collect();
        img0.sort();
        assert_eq!(img0, vec!["[[],[]]", "[[]]", "[]"]);
    }

    #[test]
    fn m_zips_equal_sizes() {
        let (x, y) = (Obj::base("X", &["a"]), Obj::base("Y", &["b"]));
        let m = multiset_m(&x, &y);
        let img = m.image(&Elem::pair(bag(&["a", "a"]), bag(&["b", "b"])), 10).unwrap();
        assert_eq!(img.len(), 1);
        assert_eq!(img[0].encode(), "[(a,b),(a,b)]");
        assert!(m
            .image(&Elem::pair(bag(&["a"]), bag(&["b", "b"])), 10)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn identity_modality_delta_is_identity() {
        let fs = FinSet::default();
        let md = identity_modality(&fs).unwrap();
        let a = Obj::base("A", &["0", "1"]);
        let d = md.modality.delta(&fs, &a).unwrap();
        assert!(fs.payload_eq(&d, &fs.id(&a).unwrap()));
    }
}
