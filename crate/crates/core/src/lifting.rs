//! Mixed distributive laws `λ: T! → !T`, their liftings in both
//! directions, the laws `ω♮` on `A⊗−` built from coalgebras, and the
//! assembly of the lifted linear category on the algebras of a Hopf monad.

use crate::error::{Error, Result};
use crate::hopf::Group;
use crate::hopf::{hopf_diagrams, BimonoidData, HopfMonoidData, MonoidData};
use crate::instances::{FinRel, MatQ};
use crate::kernel::{Checker, Elem, Instance, Morphism, Obj, Probe, SuiteResult};
use crate::modality::{
    coalgebra_modality_laws, copies_coalgebra, monoidal_modality_laws, multiset_modality, CoalgebraModalityData,
    MonoidalCoalgebraModalityData,
};
use crate::monadic::{
    algebra_laws, bimonoid_to_comonoidal_monad, coalgebra_laws, coalgebra_morphism_witness, comonoidal_laws,
    em_cotensor, em_smc_laws, em_tensor, family, family2, hopf_inverse_from_antipode, hopf_monad_laws, lift_fact,
    lifted_hom_laws, manual_clone, unit_algebra, unit_coalgebra, AlgebraData, CoalgebraData, ComonadData,
    ComonoidalMonadData, EmView, Family, MonadData, MonoidalComonadData, Mor,
};
use crate::monoidal::{Closed, Smc};

pub const MIXED_ANCHOR: &str = "mixed distributive law: λ: T! → !T respects μ, η, δ and ε";
pub const SYMMON_ANCHOR: &str = "symmetric monoidal mixed distributive law: λ respects m, m_K, n and n_K";
pub const NABLASTRONG_ANCHOR: &str = "laws on A⊗−: λ commutes with the associator and m";
pub const EXTRA_S_ANCHOR: &str = "laws on H⊗−: λ commutes with the antipode";
pub const LIFTING_ANCHOR: &str = "liftings: ν ↦ λ;!(ν) on algebras and ω ↦ T(ω);λ on coalgebras";
pub const ROUND_TRIP_ANCHOR: &str = "coalgebra structures on A correspond to laws on A⊗−";
pub const COALGEBRA_LAW_ANCHOR: &str = "coalgebra mixed distributive law: λ is a comonoid morphism";
pub const EXP_LIFTING_ANCHOR: &str = "exponential lifting monad: the modality lifts to algebras";
pub const MELL_ANCHOR: &str = "MELL lifting monad: algebras form a linear category over the base";

/// A mixed distributive law `λ_X: T!X → !TX`.
pub struct DistLawData<I: Instance> {
    pub monad: MonadData<I>,
    pub comonad: ComonadData<I>,
    pub lambda: Family<I>,
}
manual_clone!(DistLawData { monad, comonad, lambda });

impl<I: Instance> DistLawData<I> {
    pub fn lambda(&self, inst: &I, x: &Obj) -> Result<Mor<I>> {
        (self.lambda)(inst, x)
    }
}

/// A mixed law between a comonoidal monad and a monoidal comonad.
pub struct SymMonDistLawData<I: Instance> {
    pub law: DistLawData<I>,
    pub cm: ComonoidalMonadData<I>,
    pub mc: MonoidalComonadData<I>,
}
manual_clone!(SymMonDistLawData { law, cm, mc });

/// Everything a lifting suite runs on. `law` and `modality` are absent for
/// bundles that only carry the closed and Hopf layers.
pub struct LiftingMonadBundle<I: Instance> {
    pub name: String,
    pub bimonoid: BimonoidData<Mor<I>>,
    pub antipode: Option<Mor<I>>,
    pub cm: ComonoidalMonadData<I>,
    pub modality: Option<MonoidalCoalgebraModalityData<I>>,
    pub law: Option<SymMonDistLawData<I>>,
    /// The coalgebra `(A, ω)` the law was built from.
    pub coalgebra: Option<CoalgebraData<Mor<I>>>,
    /// `μ♯_X: T!TX → !TX`, the lifted free-algebra actions.
    pub mu_sharp: Option<Family<I>>,
    pub objects: Vec<Obj>,
    pub algebras: Vec<AlgebraData<Mor<I>>>,
    pub coalgebras: Vec<CoalgebraData<Mor<I>>>,
}
manual_clone!(LiftingMonadBundle {
    name,
    bimonoid,
    antipode,
    cm,
    modality,
    law,
    coalgebra,
    mu_sharp,
    objects,
    algebras,
    coalgebras
});

impl<I: Instance> LiftingMonadBundle<I> {
    pub fn exponential(&self) -> bool {
        self.law.is_some() && self.modality.is_some()
    }

    pub fn mell(&self) -> bool {
        self.exponential() && self.antipode.is_some()
    }

    pub fn hopf(&self) -> Option<HopfMonoidData<Mor<I>>> {
        self.antipode.as_ref().map(|s| HopfMonoidData {
            bimonoid: self.bimonoid.clone(),
            antipode: s.clone(),
        })
    }

    fn carrier(&self) -> &Obj {
        &self.bimonoid.monoid.carrier
    }

    fn require_law(&self, suite: &str) -> Result<(&SymMonDistLawData<I>, &MonoidalCoalgebraModalityData<I>)> {
        match (&self.law, &self.modality) {
            (Some(l), Some(m)) => Ok((l, m)),
            _ => Err(Error::Unsupported(format!(
                "bundle {} carries no modality, so suite {suite} does not apply",
                self.name
            ))),
        }
    }
}

/// The two monad-side and two comonad-side squares.
pub fn mixed_law_laws<I: Instance>(ck: &mut Checker<'_, I>, tag: &str, law: &DistLawData<I>, objs: &[Obj]) {
    let inst = ck.inst;
    let (t, b) = (&law.monad.t, &law.comonad.bang);
    let (monad, comonad) = (&law.monad, &law.comonad);
    for x in objs {
        let (tx, bx) = (t.obj(x), b.obj(x));
        ck.paths(format!("{tag}mixed-mu[{x}]"), MIXED_ANCHOR, || {
            Ok((
                vec![
                    t.mor(inst, &law.lambda(inst, x)?)?,
                    law.lambda(inst, &tx)?,
                    b.mor(inst, &monad.mu(inst, x)?)?,
                ],
                vec![monad.mu(inst, &bx)?, law.lambda(inst, x)?],
            ))
        });
        ck.paths(format!("{tag}mixed-eta[{x}]"), MIXED_ANCHOR, || {
            Ok((
                vec![monad.eta(inst, &bx)?, law.lambda(inst, x)?],
                vec![b.mor(inst, &monad.eta(inst, x)?)?],
            ))
        });
        ck.paths(format!("{tag}mixed-delta[{x}]"), MIXED_ANCHOR, || {
            Ok((
                vec![law.lambda(inst, x)?, comonad.delta(inst, &tx)?],
                vec![
                    t.mor(inst, &comonad.delta(inst, x)?)?,
                    law.lambda(inst, &bx)?,
                    b.mor(inst, &law.lambda(inst, x)?)?,
                ],
            ))
        });
        ck.paths(format!("{tag}mixed-eps[{x}]"), MIXED_ANCHOR, || {
            Ok((
                vec![law.lambda(inst, x)?, comonad.eps(inst, &tx)?],
                vec![t.mor(inst, &comonad.eps(inst, x)?)?],
            ))
        });
    }
}

/// The squares relating λ to `m, n` and to `m_K, n_K`.
pub fn symmon_law_laws<I: Instance>(ck: &mut Checker<'_, I>, tag: &str, sl: &SymMonDistLawData<I>, objs: &[Obj]) {
    let inst = ck.inst;
    let (t, b) = (&sl.law.monad.t, &sl.law.comonad.bang);
    let k = Obj::Unit;
    for x in objs {
        for y in objs {
            let xy = Obj::tensor(x, y);
            ck.paths(format!("{tag}symmon-m[{x},{y}]"), SYMMON_ANCHOR, || {
                Ok((
                    vec![
                        t.mor(inst, &sl.mc.m(inst, x, y)?)?,
                        sl.law.lambda(inst, &xy)?,
                        b.mor(inst, &sl.cm.n(inst, x, y)?)?,
                    ],
                    vec![
                        sl.cm.n(inst, &b.obj(x), &b.obj(y))?,
                        inst.par(&sl.law.lambda(inst, x)?, &sl.law.lambda(inst, y)?)?,
                        sl.mc.m(inst, &t.obj(x), &t.obj(y))?,
                    ],
                ))
            });
        }
    }
    ck.paths(format!("{tag}symmon-unit"), SYMMON_ANCHOR, || {
        Ok((
            vec![
                t.mor(inst, &sl.mc.m_k)?,
                sl.law.lambda(inst, &k)?,
                b.mor(inst, &sl.cm.n_k)?,
            ],
            vec![sl.cm.n_k.clone(), sl.mc.m_k.clone()],
        ))
    });
}

/// `α_{A,!X,!Y};(λ_X⊗1);m_{A⊗X,Y} = (1⊗m_{X,Y});λ_{X⊗Y};!(α_{A,X,Y})`.
pub fn nablastrong_laws<I: Instance>(
    ck: &mut Checker<'_, I>,
    tag: &str,
    sl: &SymMonDistLawData<I>,
    a: &Obj,
    objs: &[Obj],
) {
    let inst = ck.inst;
    let b = &sl.law.comonad.bang;
    for x in objs {
        for y in objs {
            let ax = Obj::tensor(a, x);
            ck.paths(format!("{tag}nablastrong[{x},{y}]"), NABLASTRONG_ANCHOR, || {
                Ok((
                    vec![
                        inst.alpha(a, &b.obj(x), &b.obj(y))?,
                        inst.rwhisker(&sl.law.lambda(inst, x)?, &b.obj(y))?,
                        sl.mc.m(inst, &ax, y)?,
                    ],
                    vec![
                        inst.lwhisker(a, &sl.mc.m(inst, x, y)?)?,
                        sl.law.lambda(inst, &Obj::tensor(x, y))?,
                        b.mor(inst, &inst.alpha(a, x, y)?)?,
                    ],
                ))
            });
        }
    }
}

/// `(S⊗1);λ_X = λ_X;!(S⊗1)`.
pub fn extra_s_laws<I: Instance>(ck: &mut Checker<'_, I>, tag: &str, law: &DistLawData<I>, s: &Mor<I>, objs: &[Obj]) {
    let inst = ck.inst;
    let b = &law.comonad.bang;
    for x in objs {
        ck.paths(format!("{tag}extra-s[{x}]"), EXTRA_S_ANCHOR, || {
            Ok((
                vec![inst.rwhisker(s, &b.obj(x))?, law.lambda(inst, x)?],
                vec![law.lambda(inst, x)?, b.mor(inst, &inst.rwhisker(s, x)?)?],
            ))
        });
    }
}

/// `ν♯ = λ_A;!(ν)` on `!A`.
pub fn lift_action<I: Instance>(
    inst: &I,
    law: &DistLawData<I>,
    alg: &AlgebraData<Mor<I>>,
) -> Result<AlgebraData<Mor<I>>> {
    let b = &law.comonad.bang;
    Ok(AlgebraData {
        carrier: b.obj(&alg.carrier),
        action: inst.then(&law.lambda(inst, &alg.carrier)?, &b.mor(inst, &alg.action)?)?,
    })
}

/// `ω♭ = T(ω);λ_A` on `TA`.
pub fn lift_coaction<I: Instance>(
    inst: &I,
    law: &DistLawData<I>,
    coalg: &CoalgebraData<Mor<I>>,
) -> Result<CoalgebraData<Mor<I>>> {
    let t = &law.monad.t;
    Ok(CoalgebraData {
        carrier: t.obj(&coalg.carrier),
        coaction: inst.then(&t.mor(inst, &coalg.coaction)?, &law.lambda(inst, &coalg.carrier)?)?,
    })
}

/// `μ♯_X`: the lifted action on the free algebra `(TX, μ_X)`.
pub fn free_lifting<I: Instance>(law: &DistLawData<I>) -> Family<I> {
    let law = law.clone();
    family(move |i: &I, x| Ok(lift_action(i, &law, &law.monad.free_algebra(i, x)?)?.action))
}

/// `δ♭_X`: the lifted coaction on the cofree coalgebra `(!X, δ_X)`.
pub fn cofree_colifting<I: Instance>(law: &DistLawData<I>) -> Family<I> {
    let law = law.clone();
    family(move |i: &I, x| Ok(lift_coaction(i, &law, &law.comonad.cofree(i, x)?)?.coaction))
}

/// `λ_X = T(!(η_X));μ♯_X`.
pub fn law_from_lifting<I: Instance>(
    monad: &MonadData<I>,
    comonad: &ComonadData<I>,
    mu_sharp: Family<I>,
) -> DistLawData<I> {
    let (t, c) = (monad.clone(), comonad.clone());
    DistLawData {
        monad: monad.clone(),
        comonad: comonad.clone(),
        lambda: family(move |i: &I, x| i.then(&t.t.mor(i, &c.bang.mor(i, &t.eta(i, x)?)?)?, &mu_sharp(i, x)?)),
    }
}

/// `λ_X = δ♭_X;!(T(ε_X))`.
pub fn law_from_colifting<I: Instance>(
    monad: &MonadData<I>,
    comonad: &ComonadData<I>,
    delta_flat: Family<I>,
) -> DistLawData<I> {
    let (t, c) = (monad.clone(), comonad.clone());
    DistLawData {
        monad: monad.clone(),
        comonad: comonad.clone(),
        lambda: family(move |i: &I, x| i.then(&delta_flat(i, x)?, &c.bang.mor(i, &t.t.mor(i, &c.eps(i, x)?)?)?)),
    }
}

/// `ω♮_X = (ω⊗1_{!X});m_{A,X}` for the monad of a cocommutative bimonoid on `A`.
pub fn omega_natural<I: Instance>(
    mmd: &MonoidalCoalgebraModalityData<I>,
    cm: &ComonoidalMonadData<I>,
    coalg: &CoalgebraData<Mor<I>>,
) -> SymMonDistLawData<I> {
    let (omega, a) = (coalg.coaction.clone(), coalg.carrier.clone());
    let m = mmd.clone();
    SymMonDistLawData {
        law: DistLawData {
            monad: cm.monad.clone(),
            comonad: mmd.modality.comonad.clone(),
            lambda: family(move |i: &I, x| i.then(&i.rwhisker(&omega, &m.bang().obj(x))?, &m.m(i, &a, x)?)),
        },
        cm: cm.clone(),
        mc: mmd.monoidal_comonad(),
    }
}

/// `λ◇ = ρ⁻¹;(1⊗m_K);λ_K;!(ρ)` on `A`.
pub fn lambda_diamond<I: Instance>(inst: &I, sl: &SymMonDistLawData<I>, a: &Obj) -> Result<CoalgebraData<Mor<I>>> {
    let k = Obj::Unit;
    Ok(CoalgebraData {
        carrier: a.clone(),
        coaction: inst.path(&[
            inst.runit_inv(a)?,
            inst.lwhisker(a, &sl.mc.m_k)?,
            sl.law.lambda(inst, &k)?,
            sl.law.comonad.bang.mor(inst, &inst.runit(a)?)?,
        ])?,
    })
}

fn colift_fact<I: Instance>(
    ck: &mut Checker<'_, I>,
    name: String,
    comonad: &ComonadData<I>,
    f: Result<Mor<I>>,
    src: Result<CoalgebraData<Mor<I>>>,
    tgt: Result<CoalgebraData<Mor<I>>>,
) {
    let inst = ck.inst;
    let probe = ck.probe;
    ck.fact(name, LIFTING_ANCHOR, || {
        coalgebra_morphism_witness(inst, comonad, &f?, &src?, &tgt?, &probe)
    });
}

fn alg_fact<I: Instance>(
    ck: &mut Checker<'_, I>,
    name: String,
    view: &EmView<'_, I>,
    f: Result<Mor<I>>,
    src: Result<AlgebraData<Mor<I>>>,
    tgt: Result<AlgebraData<Mor<I>>>,
) {
    match (src, tgt) {
        (Ok(s), Ok(t)) => lift_fact(ck, name, LIFTING_ANCHOR, view, f, &s, &t),
        (Err(e), _) | (_, Err(e)) => {
            ck.fact(name, LIFTING_ANCHOR, || Err(e));
        }
    }
}

/// The hypotheses of `ω♮`: `(A, ω)` is a coalgebra and `∇`, `u` are
/// coalgebra morphisms out of `(A⊗A, ω⊗ᵐω)` and `(K, m_K)`.
pub fn omega_hypotheses<I: Instance>(
    ck: &mut Checker<'_, I>,
    tag: &str,
    mmd: &MonoidalCoalgebraModalityData<I>,
    monoid: &MonoidData<Mor<I>>,
    coalg: &CoalgebraData<Mor<I>>,
) {
    let inst = ck.inst;
    let mc = mmd.monoidal_comonad();
    let co = &mc.comonad;
    coalgebra_laws(ck, &format!("{tag}omega:"), co, coalg);
    colift_fact(
        ck,
        format!("{tag}mult-is-coalgebra-map"),
        co,
        Ok(monoid.mult.clone()),
        em_cotensor(inst, &mc, coalg, coalg),
        Ok(coalg.clone()),
    );
    colift_fact(
        ck,
        format!("{tag}unit-is-coalgebra-map"),
        co,
        Ok(monoid.unit.clone()),
        Ok(unit_coalgebra(&mc)),
        Ok(coalg.clone()),
    );
}

/// Both bijection round trips, and the recovery of λ from its liftings in
/// either direction.
pub fn round_trip_laws<I: Instance>(
    ck: &mut Checker<'_, I>,
    tag: &str,
    mmd: &MonoidalCoalgebraModalityData<I>,
    sl: &SymMonDistLawData<I>,
    coalg: &CoalgebraData<Mor<I>>,
    objs: &[Obj],
) {
    let inst = ck.inst;
    let a = &coalg.carrier;
    let diamond = lambda_diamond(inst, sl, a);
    ck.equal(format!("{tag}diamond-of-natural[{a}]"), ROUND_TRIP_ANCHOR, || {
        Ok((diamond.clone()?.coaction, coalg.coaction.clone()))
    });
    let back = diamond.map(|d| omega_natural(mmd, &sl.cm, &d));
    let from_lift = law_from_lifting(&sl.law.monad, &sl.law.comonad, free_lifting(&sl.law));
    let from_colift = law_from_colifting(&sl.law.monad, &sl.law.comonad, cofree_colifting(&sl.law));
    for x in objs {
        ck.equal(format!("{tag}natural-of-diamond[{x}]"), ROUND_TRIP_ANCHOR, || {
            Ok((back.clone()?.law.lambda(inst, x)?, sl.law.lambda(inst, x)?))
        });
        ck.equal(format!("{tag}law-from-lifting[{x}]"), ROUND_TRIP_ANCHOR, || {
            Ok((from_lift.lambda(inst, x)?, sl.law.lambda(inst, x)?))
        });
        ck.equal(format!("{tag}law-from-colifting[{x}]"), ROUND_TRIP_ANCHOR, || {
            Ok((from_colift.lambda(inst, x)?, sl.law.lambda(inst, x)?))
        });
    }
}

/// `Δᵀ;(λ⊗λ) = λ;Δ`, `eᵀ = λ;e`, and preservation of induced comonoids
/// along `ω ↦ ω♭`.
pub fn coalgebra_mixed_law_laws<I: Instance>(
    ck: &mut Checker<'_, I>,
    tag: &str,
    law: &DistLawData<I>,
    cm: &ComonoidalMonadData<I>,
    md: &CoalgebraModalityData<I>,
    objs: &[Obj],
    coalgebras: &[CoalgebraData<Mor<I>>],
) {
    let inst = ck.inst;
    let t = &law.monad.t;
    let b = md.bang();
    for x in objs {
        let (tx, bx) = (t.obj(x), b.obj(x));
        ck.paths(format!("{tag}coalg-law-comult[{x}]"), COALGEBRA_LAW_ANCHOR, || {
            Ok((
                vec![law.lambda(inst, x)?, md.comult(inst, &tx)?],
                vec![
                    t.mor(inst, &md.comult(inst, x)?)?,
                    cm.n(inst, &bx, &bx)?,
                    inst.par(&law.lambda(inst, x)?, &law.lambda(inst, x)?)?,
                ],
            ))
        });
        ck.paths(format!("{tag}coalg-law-counit[{x}]"), COALGEBRA_LAW_ANCHOR, || {
            Ok((
                vec![law.lambda(inst, x)?, md.counit(inst, &tx)?],
                vec![t.mor(inst, &md.counit(inst, x)?)?, cm.n_k.clone()],
            ))
        });
    }
    for w in coalgebras {
        let a = &w.carrier;
        let ta = t.obj(a);
        let induced = crate::modality::induced_comonoid(inst, md, w);
        let flat = lift_coaction(inst, law, w);
        ck.paths(
            format!("{tag}induced-comult-preserved[{a}]"),
            COALGEBRA_LAW_ANCHOR,
            || {
                let eps = md.eps(inst, &ta)?;
                Ok((
                    vec![t.mor(inst, &induced.clone()?.comult)?, cm.n(inst, a, a)?],
                    vec![flat.clone()?.coaction, md.comult(inst, &ta)?, inst.par(&eps, &eps)?],
                ))
            },
        );
        ck.paths(
            format!("{tag}induced-counit-preserved[{a}]"),
            COALGEBRA_LAW_ANCHOR,
            || {
                Ok((
                    vec![t.mor(inst, &induced.clone()?.counit)?, cm.n_k.clone()],
                    vec![flat.clone()?.coaction, md.counit(inst, &ta)?],
                ))
            },
        );
    }
}

/// The modality lifted to algebras: each `ν♯` is an algebra and ε, δ, Δ, e,
/// m, m_K are algebra morphisms with identical payloads.
pub fn lifted_modality_laws<I: Instance>(
    ck: &mut Checker<'_, I>,
    tag: &str,
    sl: &SymMonDistLawData<I>,
    mmd: &MonoidalCoalgebraModalityData<I>,
    algebras: &[AlgebraData<Mor<I>>],
) {
    let inst = ck.inst;
    let law = &sl.law;
    let md = &mmd.modality;
    let view = EmView::new(inst, &law.monad, ck.probe);
    let unit = unit_algebra(&sl.cm);
    let sharp = |x: &AlgebraData<Mor<I>>| lift_action(inst, law, x);
    for x in algebras {
        let a = &x.carrier;
        match sharp(x) {
            Ok(s) => algebra_laws(ck, &format!("{tag}sharp:"), &law.monad, &s),
            Err(e) => {
                ck.fact(format!("{tag}sharp[{a}]"), LIFTING_ANCHOR, || Err(e));
                continue;
            }
        }
        alg_fact(
            ck,
            format!("{tag}lifted-eps[{a}]"),
            &view,
            md.eps(inst, a),
            sharp(x),
            Ok(x.clone()),
        );
        alg_fact(
            ck,
            format!("{tag}lifted-delta[{a}]"),
            &view,
            md.delta(inst, a),
            sharp(x),
            sharp(x).and_then(|s| sharp(&s)),
        );
        alg_fact(
            ck,
            format!("{tag}lifted-comult[{a}]"),
            &view,
            md.comult(inst, a),
            sharp(x),
            sharp(x).and_then(|s| em_tensor(inst, &sl.cm, &s, &s)),
        );
        alg_fact(
            ck,
            format!("{tag}lifted-counit[{a}]"),
            &view,
            md.counit(inst, a),
            sharp(x),
            Ok(unit.clone()),
        );
        for y in algebras {
            let b = &y.carrier;
            alg_fact(
                ck,
                format!("{tag}lifted-m[{a},{b}]"),
                &view,
                mmd.m(inst, a, b),
                sharp(x).and_then(|sx| em_tensor(inst, &sl.cm, &sx, &sharp(y)?)),
                em_tensor(inst, &sl.cm, x, y).and_then(|xy| sharp(&xy)),
            );
        }
    }
    alg_fact(
        ck,
        format!("{tag}lifted-m-unit"),
        &view,
        Ok(mmd.m_k.clone()),
        Ok(unit.clone()),
        sharp(&unit),
    );
}

/// The comonoidal monad lifted to coalgebras: each `ω♭` is a coalgebra and
/// μ, η, n, n_K are coalgebra morphisms.
pub fn lifted_monad_laws<I: Instance>(
    ck: &mut Checker<'_, I>,
    tag: &str,
    sl: &SymMonDistLawData<I>,
    coalgebras: &[CoalgebraData<Mor<I>>],
) {
    let inst = ck.inst;
    let law = &sl.law;
    let co = &law.comonad;
    let flat = |w: &CoalgebraData<Mor<I>>| lift_coaction(inst, law, w);
    let unit = unit_coalgebra(&sl.mc);
    for w in coalgebras {
        let a = &w.carrier;
        match flat(w) {
            Ok(f) => coalgebra_laws(ck, &format!("{tag}flat:"), co, &f),
            Err(e) => {
                ck.fact(format!("{tag}flat[{a}]"), LIFTING_ANCHOR, || Err(e));
                continue;
            }
        }
        colift_fact(
            ck,
            format!("{tag}lifted-mu[{a}]"),
            co,
            law.monad.mu(inst, a),
            flat(w).and_then(|f| flat(&f)),
            flat(w),
        );
        colift_fact(
            ck,
            format!("{tag}lifted-eta[{a}]"),
            co,
            law.monad.eta(inst, a),
            Ok(w.clone()),
            flat(w),
        );
        for v in coalgebras {
            let b = &v.carrier;
            colift_fact(
                ck,
                format!("{tag}lifted-n[{a},{b}]"),
                co,
                sl.cm.n(inst, a, b),
                em_cotensor(inst, &sl.mc, w, v).and_then(|wv| flat(&wv)),
                flat(w).and_then(|fw| em_cotensor(inst, &sl.mc, &fw, &flat(v)?)),
            );
        }
    }
    colift_fact(
        ck,
        format!("{tag}lifted-n-unit"),
        co,
        Ok(sl.cm.n_k.clone()),
        flat(&unit),
        Ok(unit.clone()),
    );
}

/// The law-level diagrams of a bundle: mixed, symmetric monoidal, the two
/// extra coherences, the `ω♮` hypotheses and every round trip.
pub fn mixed_law_diagrams<I: Instance>(ck: &mut Checker<'_, I>, bundle: &LiftingMonadBundle<I>) -> Result<()> {
    let (sl, mmd) = bundle.require_law("mixed-law")?;
    let inst = ck.inst;
    let objs = &bundle.objects;
    let a = bundle.carrier().clone();
    mixed_law_laws(ck, "", &sl.law, objs);
    symmon_law_laws(ck, "", sl, objs);
    nablastrong_laws(ck, "", sl, &a, objs);
    if let Some(coalg) = &bundle.coalgebra {
        omega_hypotheses(ck, "", mmd, &bundle.bimonoid.monoid, coalg);
        round_trip_laws(ck, "", mmd, sl, coalg, objs);
    }
    if let Some(s) = &bundle.antipode {
        extra_s_laws(ck, "", &sl.law, s, objs);
        let diamond = lambda_diamond(inst, sl, &a);
        colift_fact(
            ck,
            "antipode-is-coalgebra-map".to_string(),
            &sl.law.comonad,
            Ok(s.clone()),
            diamond.clone(),
            diamond,
        );
    }
    if let Some(mu_sharp) = &bundle.mu_sharp {
        let lifted = law_from_lifting(&sl.law.monad, &sl.law.comonad, mu_sharp.clone());
        mixed_law_laws(ck, "from-lifting:", &lifted, objs);
        for x in objs {
            ck.equal(format!("from-lifting:round-trip[{x}]"), ROUND_TRIP_ANCHOR, || {
                Ok((lifted.lambda(inst, x)?, sl.law.lambda(inst, x)?))
            });
        }
    }
    Ok(())
}

/// The exponential-lifting diagrams: comonoidal monad, mixed and
/// symmetric monoidal law, coalgebra law, and both liftings.
pub fn exp_lifting_diagrams<I: Instance>(ck: &mut Checker<'_, I>, bundle: &LiftingMonadBundle<I>) -> Result<()> {
    let (sl, mmd) = bundle.require_law("exp-lifting")?;
    let objs = &bundle.objects;
    comonoidal_laws(ck, "", &bundle.cm, objs);
    mixed_law_laws(ck, "", &sl.law, objs);
    symmon_law_laws(ck, "", sl, objs);
    coalgebra_mixed_law_laws(ck, "", &sl.law, &bundle.cm, &mmd.modality, objs, &bundle.coalgebras);
    lifted_modality_laws(ck, "", sl, mmd, &bundle.algebras);
    lifted_monad_laws(ck, "", sl, &bundle.coalgebras);
    Ok(())
}

pub fn check_mixed_law<I: Instance>(inst: &I, bundle: &LiftingMonadBundle<I>, probe: Probe) -> Result<SuiteResult> {
    let mut ck = Checker::new(inst, probe);
    mixed_law_diagrams(&mut ck, bundle)?;
    Ok(ck.finish("mixed-law", MIXED_ANCHOR))
}

pub fn check_exp_lifting<I: Instance>(inst: &I, bundle: &LiftingMonadBundle<I>, probe: Probe) -> Result<SuiteResult> {
    let mut ck = Checker::new(inst, probe);
    exp_lifting_diagrams(&mut ck, bundle)?;
    Ok(ck.finish("exp-lifting", EXP_LIFTING_ANCHOR))
}

/// The whole linear category on the algebras of the bundle's Hopf monad:
/// the Hopf monoid, fusion inverses, the symmetric monoidal structure of
/// algebras, the lifted internal hom, and (when the bundle carries a law)
/// the lifted modality with its diagrams, all with identical payloads.
pub fn assemble_mell<I: Closed>(inst: &I, bundle: &LiftingMonadBundle<I>, probe: Probe) -> Result<SuiteResult> {
    let h = bundle.hopf().ok_or_else(|| {
        Error::Unsupported(format!(
            "bundle {} has no antipode, so suite mell does not apply",
            bundle.name
        ))
    })?;
    let mut ck = Checker::new(inst, probe);
    let objs = &bundle.objects;
    hopf_diagrams(&mut ck, "hopf:", &h);
    let hm = hopf_inverse_from_antipode(&h, &bundle.cm);
    comonoidal_laws(&mut ck, "", &bundle.cm, objs);
    hopf_monad_laws(&mut ck, "", &hm, objs);
    em_smc_laws(&mut ck, "", &bundle.cm, &bundle.algebras);
    for x in &bundle.algebras {
        for y in &bundle.algebras {
            lifted_hom_laws(&mut ck, "", &hm, x, y);
        }
    }
    if bundle.exponential() {
        mixed_law_diagrams(&mut ck, bundle)?;
        exp_lifting_diagrams(&mut ck, bundle)?;
        let mmd = bundle.modality.as_ref().expect("exponential bundles carry a modality");
        let carriers: Vec<Obj> = bundle.algebras.iter().map(|x| x.carrier.clone()).collect();
        coalgebra_modality_laws(&mut ck, "lifted:", &mmd.modality, &carriers);
        monoidal_modality_laws(&mut ck, "lifted:", mmd, &carriers);
    }
    Ok(ck.finish("mell", MELL_ANCHOR))
}

/// `(X, (e⊗1);ℓ)`: the algebra on which the monoid acts through its counit.
pub fn trivial_algebra<I: Instance>(inst: &I, b: &BimonoidData<Mor<I>>, x: &Obj) -> Result<AlgebraData<Mor<I>>> {
    Ok(AlgebraData {
        carrier: x.clone(),
        action: inst.then(&inst.rwhisker(&b.comonoid.counit, x)?, &inst.lunit(x)?)?,
    })
}

/// `(A, ∇)`: the monoid acting on itself.
pub fn regular_algebra<M: Clone>(m: &MonoidData<M>) -> AlgebraData<M> {
    AlgebraData {
        carrier: m.carrier.clone(),
        action: m.mult.clone(),
    }
}

/// Knobs for deliberately broken bundles.
#[derive(Clone, Copy, Debug, Default)]
pub struct BundleMutations {
    pub antipode_identity: bool,
    pub drop_eps_pair: bool,
    pub corrupt_mu_sharp: bool,
    pub break_n: bool,
    pub drop_empty_splitting: bool,
}

/// `n′_{X,Y} = n_{X,Y};(1⊗((e;u)⊗1))`: the right copy of the monoid element
/// is replaced by the unit.
pub fn broken_n<I: Instance>(cm: &ComonoidalMonadData<I>, b: &BimonoidData<Mor<I>>) -> ComonoidalMonadData<I> {
    let (c, b2) = (cm.clone(), b.clone());
    ComonoidalMonadData {
        monad: cm.monad.clone(),
        n: family2(move |i: &I, x, y| {
            let eu = i.then(&b2.comonoid.counit, &b2.monoid.unit)?;
            let ax = c.t().obj(x);
            i.then(&c.n(i, x, y)?, &i.lwhisker(&ax, &i.rwhisker(&eu, y)?)?)
        }),
        n_k: cm.n_k.clone(),
    }
}

/// `μ♯` with every pair whose output is the empty bag removed.
fn corrupt_mu_sharp(mu_sharp: Family<FinRel>) -> Family<FinRel> {
    family(move |i: &FinRel, x| {
        let f = mu_sharp(i, x)?;
        let g = f.clone();
        Ok(crate::instances::Rel::lazy(
            f.dom(),
            f.cod(),
            f.bounds().clone(),
            move |e, cap| {
                Ok(g.image(e, cap)?
                    .iter()
                    .filter(|y| y.as_bag() != Some(&[]))
                    .cloned()
                    .collect())
            },
        ))
    })
}

/// The bundle of a group acting on itself by copies: `T = G⊗−`, the
/// multiset modality, `ω = {(g, n·[g])}`, `λ = ω♮`.
pub fn copies_bundle(
    inst: &FinRel,
    g: &Group,
    mutations: BundleMutations,
    probe: Probe,
) -> Result<LiftingMonadBundle<FinRel>> {
    let h = crate::hopf::group_to_rel_hopf(inst, g)?;
    let carrier = g.carrier();
    let mut cm = bimonoid_to_comonoidal_monad(inst, &h.bimonoid, probe)?;
    if mutations.break_n {
        cm = broken_n(&cm, &h.bimonoid);
    }
    let mmd = multiset_modality(inst, !mutations.drop_empty_splitting);
    let coalg = copies_coalgebra(&carrier, mutations.drop_eps_pair);
    let sl = omega_natural(&mmd, &cm, &coalg);
    let mut mu_sharp = free_lifting(&sl.law);
    if mutations.corrupt_mu_sharp {
        mu_sharp = corrupt_mu_sharp(mu_sharp);
    }
    let antipode = if mutations.antipode_identity {
        inst.id(&carrier)?
    } else {
        h.antipode.clone()
    };
    let x = Obj::base("X", &["a"]);
    let algebras = vec![
        trivial_algebra(inst, &h.bimonoid, &x)?,
        regular_algebra(&h.bimonoid.monoid),
        cm.monad.free_algebra(inst, &x)?,
    ];
    let coalgebras = vec![coalg.clone(), mmd.modality.comonad.cofree(inst, &x)?];
    Ok(LiftingMonadBundle {
        name: format!("{}-copies-rel", g.name().to_lowercase()),
        bimonoid: h.bimonoid.clone(),
        antipode: Some(antipode),
        cm,
        modality: Some(mmd),
        law: Some(sl),
        coalgebra: Some(coalg),
        mu_sharp: Some(mu_sharp),
        objects: vec![Obj::Unit, x],
        algebras,
        coalgebras,
    })
}

/// The group algebra `K[G]` in MatQ with the trivial, sign (for `Z2`) and
/// regular modules; closed and Hopf layers only.
pub fn group_algebra_bundle(
    inst: &MatQ,
    g: &Group,
    antipode_identity: bool,
    probe: Probe,
) -> Result<LiftingMonadBundle<MatQ>> {
    let h = crate::hopf::group_algebra(inst, g)?;
    let cm = bimonoid_to_comonoidal_monad(inst, &h.bimonoid, probe)?;
    let antipode = if antipode_identity {
        inst.id(&g.carrier())?
    } else {
        h.antipode.clone()
    };
    let k = Obj::Unit;
    let mut algebras = vec![trivial_algebra(inst, &h.bimonoid, &k)?];
    if g.order() == 2 {
        algebras.push(sign_module(inst, g)?);
    }
    algebras.push(regular_algebra(&h.bimonoid.monoid));
    Ok(LiftingMonadBundle {
        name: format!("k-{}-matq", g.name().to_lowercase()),
        bimonoid: h.bimonoid.clone(),
        antipode: Some(antipode),
        cm,
        modality: None,
        law: None,
        coalgebra: None,
        mu_sharp: None,
        objects: vec![k, g.carrier()],
        algebras,
        coalgebras: vec![],
    })
}

/// The one-dimensional module on which the generator of `Z2` acts by −1.
pub fn sign_module(inst: &MatQ, g: &Group) -> Result<AlgebraData<crate::instances::Mat>> {
    let k = Obj::Unit;
    let dom = Obj::tensor(&g.carrier(), &k);
    let row: Vec<crate::instances::Q> = inst
        .basis(&dom)?
        .elems
        .iter()
        .map(|e| match e.as_pair() {
            Some((Elem::Atom(x), _)) if &**x == g.identity() => crate::instances::matq::q(1),
            _ => crate::instances::matq::q(-1),
        })
        .collect();
    Ok(AlgebraData {
        carrier: k.clone(),
        action: inst.from_rows(&dom, &k, &[row])?,
    })
}
