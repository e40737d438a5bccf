//! Monads and comonads as object-indexed families, their algebras and
//! coalgebras, comonoidal monads, monoidal comonads, Eilenberg-Moore
//! tensors, fusion operators and the monoid/monad correspondences.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hopf::{require_cocommutative, BimonoidData, ComonoidData, HopfMonoidData, MonoidData};
use crate::kernel::{Checker, Instance, Obj, Probe, Witness};
use crate::monoidal::{Closed, Smc};

pub const MONAD_ANCHOR: &str = "monad: multiplication and unit, associativity and unit laws";
pub const ALGEBRA_ANCHOR: &str = "T-algebra: action compatible with unit and multiplication";
pub const COMONAD_ANCHOR: &str = "comonad: comultiplication and counit, coassociativity and counit laws";
pub const COALGEBRA_ANCHOR: &str = "!-coalgebra: coaction compatible with counit and comultiplication";
pub const COMONOIDAL_ANCHOR: &str = "symmetric comonoidal monad: comonoidal endofunctor compatible with the monad";
pub const MONOIDAL_COMONAD_ANCHOR: &str =
    "symmetric monoidal comonad: monoidal endofunctor compatible with the comonad";
pub const EM_ANCHOR: &str = "Eilenberg-Moore category: tensor of algebras is an algebra";
pub const FUSION_ANCHOR: &str = "Hopf monad: fusion operators are invertible";
pub const CORRESPONDENCE_ANCHOR: &str = "monoids on A correspond to monads on A⊗−";
pub const LIFTED_HOM_ANCHOR: &str = "lifted internal hom: the curried action on A⊸B";

pub type Mor<I> = <I as Instance>::Mor;
pub type ObjMap = Arc<dyn Fn(&Obj) -> Obj + Send + Sync>;
pub type MorMap<I> = Arc<dyn Fn(&I, &Mor<I>) -> Result<Mor<I>> + Send + Sync>;
/// A natural family `X ↦ φ_X`.
pub type Family<I> = Arc<dyn Fn(&I, &Obj) -> Result<Mor<I>> + Send + Sync>;
/// A natural family in two variables `(X, Y) ↦ φ_{X,Y}`.
pub type Family2<I> = Arc<dyn Fn(&I, &Obj, &Obj) -> Result<Mor<I>> + Send + Sync>;

pub fn family<I: Instance>(f: impl Fn(&I, &Obj) -> Result<Mor<I>> + Send + Sync + 'static) -> Family<I> {
    Arc::new(f)
}

pub fn family2<I: Instance>(f: impl Fn(&I, &Obj, &Obj) -> Result<Mor<I>> + Send + Sync + 'static) -> Family2<I> {
    Arc::new(f)
}

macro_rules! manual_clone {
    ($name:ident { $($field:ident),* }) => {
        impl<I: Instance> Clone for $name<I> {
            fn clone(&self) -> Self {
                $name { $($field: self.$field.clone()),* }
            }
        }
    };
}
pub(crate) use manual_clone;

/// An endofunctor given by its object and morphism actions.
pub struct Functor<I: Instance> {
    pub name: String,
    obj: ObjMap,
    mor: MorMap<I>,
}
manual_clone!(Functor { name, obj, mor });

impl<I: Instance> Functor<I> {
    pub fn new(
        name: impl Into<String>,
        obj: impl Fn(&Obj) -> Obj + Send + Sync + 'static,
        mor: impl Fn(&I, &Mor<I>) -> Result<Mor<I>> + Send + Sync + 'static,
    ) -> Self {
        Functor {
            name: name.into(),
            obj: Arc::new(obj),
            mor: Arc::new(mor),
        }
    }

    pub fn identity() -> Self {
        Functor::new("1", |x| x.clone(), |_: &I, f: &Mor<I>| Ok(f.clone()))
    }

    /// `A⊗−`.
    pub fn left_tensor(a: &Obj) -> Self {
        let (a1, a2) = (a.clone(), a.clone());
        Functor::new(
            format!("{a}⊗−"),
            move |x| Obj::tensor(&a1, x),
            move |i: &I, f| i.lwhisker(&a2, f),
        )
    }

    pub fn obj(&self, x: &Obj) -> Obj {
        (self.obj)(x)
    }

    pub fn mor(&self, inst: &I, f: &Mor<I>) -> Result<Mor<I>> {
        (self.mor)(inst, f)
    }
}

/// `(T, μ, η)`. `shape` is `Some(A)` exactly when `T = A⊗−`.
pub struct MonadData<I: Instance> {
    pub t: Functor<I>,
    pub mu: Family<I>,
    pub eta: Family<I>,
    pub shape: Option<Obj>,
}
manual_clone!(MonadData { t, mu, eta, shape });

impl<I: Instance> MonadData<I> {
    pub fn identity() -> Self {
        MonadData {
            t: Functor::identity(),
            mu: family(|i: &I, x| i.id(x)),
            eta: family(|i: &I, x| i.id(x)),
            shape: None,
        }
    }

    pub fn mu(&self, inst: &I, x: &Obj) -> Result<Mor<I>> {
        (self.mu)(inst, x)
    }

    pub fn eta(&self, inst: &I, x: &Obj) -> Result<Mor<I>> {
        (self.eta)(inst, x)
    }

    /// The free algebra `(TA, μ_A)`.
    pub fn free_algebra(&self, inst: &I, a: &Obj) -> Result<AlgebraData<Mor<I>>> {
        Ok(AlgebraData {
            carrier: self.t.obj(a),
            action: self.mu(inst, a)?,
        })
    }
}

/// `(!, δ, ε)`.
pub struct ComonadData<I: Instance> {
    pub bang: Functor<I>,
    pub delta: Family<I>,
    pub eps: Family<I>,
}
manual_clone!(ComonadData { bang, delta, eps });

impl<I: Instance> ComonadData<I> {
    pub fn identity() -> Self {
        ComonadData {
            bang: Functor::identity(),
            delta: family(|i: &I, x| i.id(x)),
            eps: family(|i: &I, x| i.id(x)),
        }
    }

    pub fn delta(&self, inst: &I, x: &Obj) -> Result<Mor<I>> {
        (self.delta)(inst, x)
    }

    pub fn eps(&self, inst: &I, x: &Obj) -> Result<Mor<I>> {
        (self.eps)(inst, x)
    }

    /// The cofree coalgebra `(!A, δ_A)`.
    pub fn cofree(&self, inst: &I, a: &Obj) -> Result<CoalgebraData<Mor<I>>> {
        Ok(CoalgebraData {
            carrier: self.bang.obj(a),
            coaction: self.delta(inst, a)?,
        })
    }
}

/// A monad with `n_{A,B}: T(A⊗B) → TA⊗TB` and `n_K: TK → K`.
pub struct ComonoidalMonadData<I: Instance> {
    pub monad: MonadData<I>,
    pub n: Family2<I>,
    pub n_k: Mor<I>,
}
manual_clone!(ComonoidalMonadData { monad, n, n_k });

impl<I: Instance> ComonoidalMonadData<I> {
    pub fn identity(inst: &I) -> Result<Self> {
        Ok(ComonoidalMonadData {
            monad: MonadData::identity(),
            n: family2(|i: &I, a, b| i.id(&Obj::tensor(a, b))),
            n_k: inst.id(&Obj::Unit)?,
        })
    }

    pub fn t(&self) -> &Functor<I> {
        &self.monad.t
    }

    pub fn n(&self, inst: &I, a: &Obj, b: &Obj) -> Result<Mor<I>> {
        (self.n)(inst, a, b)
    }
}

/// A comonad with `m_{A,B}: !A⊗!B → !(A⊗B)` and `m_K: K → !K`.
pub struct MonoidalComonadData<I: Instance> {
    pub comonad: ComonadData<I>,
    pub m: Family2<I>,
    pub m_k: Mor<I>,
}
manual_clone!(MonoidalComonadData { comonad, m, m_k });

impl<I: Instance> MonoidalComonadData<I> {
    pub fn m(&self, inst: &I, a: &Obj, b: &Obj) -> Result<Mor<I>> {
        (self.m)(inst, a, b)
    }
}

#[derive(Clone, Debug)]
pub struct AlgebraData<M> {
    pub carrier: Obj,
    pub action: M,
}

#[derive(Clone, Debug)]
pub struct CoalgebraData<M> {
    pub carrier: Obj,
    pub coaction: M,
}

/// A comonoidal monad whose fusion operators have the given inverses.
pub struct HopfMonadData<I: Instance> {
    pub cm: ComonoidalMonadData<I>,
    pub hl_inv: Family2<I>,
    pub hr_inv: Family2<I>,
}
manual_clone!(HopfMonadData { cm, hl_inv, hr_inv });

pub fn monad_laws<I: Instance>(ck: &mut Checker<'_, I>, tag: &str, t: &MonadData<I>, objs: &[Obj]) {
    let inst = ck.inst;
    for a in objs {
        let ta = t.t.obj(a);
        ck.paths(format!("{tag}monad-assoc[{a}]"), MONAD_ANCHOR, || {
            Ok((
                vec![t.t.mor(inst, &t.mu(inst, a)?)?, t.mu(inst, a)?],
                vec![t.mu(inst, &ta)?, t.mu(inst, a)?],
            ))
        });
        ck.paths(format!("{tag}monad-left-unit[{a}]"), MONAD_ANCHOR, || {
            Ok((vec![t.eta(inst, &ta)?, t.mu(inst, a)?], vec![inst.id(&ta)?]))
        });
        ck.paths(format!("{tag}monad-right-unit[{a}]"), MONAD_ANCHOR, || {
            Ok((
                vec![t.t.mor(inst, &t.eta(inst, a)?)?, t.mu(inst, a)?],
                vec![inst.id(&ta)?],
            ))
        });
    }
}

pub fn algebra_laws<I: Instance>(ck: &mut Checker<'_, I>, tag: &str, t: &MonadData<I>, x: &AlgebraData<Mor<I>>) {
    let inst = ck.inst;
    let a = &x.carrier;
    ck.paths(format!("{tag}algebra-unit[{a}]"), ALGEBRA_ANCHOR, || {
        Ok((vec![t.eta(inst, a)?, x.action.clone()], vec![inst.id(a)?]))
    });
    ck.paths(format!("{tag}algebra-assoc[{a}]"), ALGEBRA_ANCHOR, || {
        Ok((
            vec![t.t.mor(inst, &x.action)?, x.action.clone()],
            vec![t.mu(inst, a)?, x.action.clone()],
        ))
    });
}

pub fn comonad_laws<I: Instance>(ck: &mut Checker<'_, I>, tag: &str, c: &ComonadData<I>, objs: &[Obj]) {
    let inst = ck.inst;
    for a in objs {
        let ba = c.bang.obj(a);
        ck.paths(format!("{tag}comonad-coassoc[{a}]"), COMONAD_ANCHOR, || {
            Ok((
                vec![c.delta(inst, a)?, c.delta(inst, &ba)?],
                vec![c.delta(inst, a)?, c.bang.mor(inst, &c.delta(inst, a)?)?],
            ))
        });
        ck.paths(format!("{tag}comonad-left-counit[{a}]"), COMONAD_ANCHOR, || {
            Ok((vec![c.delta(inst, a)?, c.eps(inst, &ba)?], vec![inst.id(&ba)?]))
        });
        ck.paths(format!("{tag}comonad-right-counit[{a}]"), COMONAD_ANCHOR, || {
            Ok((
                vec![c.delta(inst, a)?, c.bang.mor(inst, &c.eps(inst, a)?)?],
                vec![inst.id(&ba)?],
            ))
        });
    }
}

pub fn coalgebra_laws<I: Instance>(ck: &mut Checker<'_, I>, tag: &str, c: &ComonadData<I>, x: &CoalgebraData<Mor<I>>) {
    let inst = ck.inst;
    let a = &x.carrier;
    ck.paths(format!("{tag}coalgebra-counit[{a}]"), COALGEBRA_ANCHOR, || {
        Ok((vec![x.coaction.clone(), c.eps(inst, a)?], vec![inst.id(a)?]))
    });
    ck.paths(format!("{tag}coalgebra-coassoc[{a}]"), COALGEBRA_ANCHOR, || {
        Ok((
            vec![x.coaction.clone(), c.delta(inst, a)?],
            vec![x.coaction.clone(), c.bang.mor(inst, &x.coaction)?],
        ))
    });
}

/// `T(f);ν_y` against `ν_x;f`.
pub fn algebra_morphism_witness<I: Instance>(
    inst: &I,
    t: &MonadData<I>,
    f: &Mor<I>,
    x: &AlgebraData<Mor<I>>,
    y: &AlgebraData<Mor<I>>,
    probe: &Probe,
) -> Result<Option<Witness>> {
    let lhs = inst.then(&t.t.mor(inst, f)?, &y.action)?;
    let rhs = inst.then(&x.action, f)?;
    inst.compare(&lhs, &rhs, probe)
}

/// `f;ω_y` against `ω_x;!(f)`.
pub fn coalgebra_morphism_witness<I: Instance>(
    inst: &I,
    c: &ComonadData<I>,
    f: &Mor<I>,
    x: &CoalgebraData<Mor<I>>,
    y: &CoalgebraData<Mor<I>>,
    probe: &Probe,
) -> Result<Option<Witness>> {
    let lhs = inst.then(f, &y.coaction)?;
    let rhs = inst.then(&x.coaction, &c.bang.mor(inst, f)?)?;
    inst.compare(&lhs, &rhs, probe)
}

/// Naturality squares `F(f);φ_B = φ_A;G(f)` on the given maps.
pub fn naturality<I: Instance>(
    ck: &mut Checker<'_, I>,
    name: &str,
    anchor: &str,
    f_fun: &Functor<I>,
    g_fun: &Functor<I>,
    phi: &Family<I>,
    maps: &[Mor<I>],
) {
    use crate::kernel::Morphism;
    let inst = ck.inst;
    for (k, f) in maps.iter().enumerate() {
        ck.paths(format!("{name}-natural[{}→{}#{k}]", f.dom(), f.cod()), anchor, || {
            Ok((
                vec![f_fun.mor(inst, f)?, phi(inst, f.cod())?],
                vec![phi(inst, f.dom())?, g_fun.mor(inst, f)?],
            ))
        });
    }
}

/// The symmetric comonoidal endofunctor diagrams and the four
/// monad-compatibility diagrams.
pub fn comonoidal_laws<I: Instance>(ck: &mut Checker<'_, I>, tag: &str, cm: &ComonoidalMonadData<I>, objs: &[Obj]) {
    let inst = ck.inst;
    let t = cm.t();
    let k = Obj::Unit;
    for a in objs {
        let ta = t.obj(a);
        ck.paths(format!("{tag}comonoidal-left-unit[{a}]"), COMONOIDAL_ANCHOR, || {
            Ok((
                vec![cm.n(inst, &k, a)?, inst.rwhisker(&cm.n_k, &ta)?, inst.lunit(&ta)?],
                vec![t.mor(inst, &inst.lunit(a)?)?],
            ))
        });
        ck.paths(format!("{tag}comonoidal-right-unit[{a}]"), COMONOIDAL_ANCHOR, || {
            Ok((
                vec![cm.n(inst, a, &k)?, inst.lwhisker(&ta, &cm.n_k)?, inst.runit(&ta)?],
                vec![t.mor(inst, &inst.runit(a)?)?],
            ))
        });
        for b in objs {
            let tb = t.obj(b);
            ck.paths(format!("{tag}comonoidal-symmetry[{a},{b}]"), COMONOIDAL_ANCHOR, || {
                Ok((
                    vec![t.mor(inst, &inst.sym(a, b)?)?, cm.n(inst, b, a)?],
                    vec![cm.n(inst, a, b)?, inst.sym(&ta, &tb)?],
                ))
            });
            ck.paths(format!("{tag}comonoidal-mu[{a},{b}]"), COMONOIDAL_ANCHOR, || {
                Ok((
                    vec![cm.monad.mu(inst, &Obj::tensor(a, b))?, cm.n(inst, a, b)?],
                    vec![
                        t.mor(inst, &cm.n(inst, a, b)?)?,
                        cm.n(inst, &ta, &tb)?,
                        inst.par(&cm.monad.mu(inst, a)?, &cm.monad.mu(inst, b)?)?,
                    ],
                ))
            });
            ck.paths(format!("{tag}comonoidal-eta[{a},{b}]"), COMONOIDAL_ANCHOR, || {
                Ok((
                    vec![cm.monad.eta(inst, &Obj::tensor(a, b))?, cm.n(inst, a, b)?],
                    vec![inst.par(&cm.monad.eta(inst, a)?, &cm.monad.eta(inst, b)?)?],
                ))
            });
            for c in objs {
                let tc = t.obj(c);
                ck.paths(format!("{tag}comonoidal-assoc[{a},{b},{c}]"), COMONOIDAL_ANCHOR, || {
                    Ok((
                        vec![
                            t.mor(inst, &inst.alpha(a, b, c)?)?,
                            cm.n(inst, &Obj::tensor(a, b), c)?,
                            inst.rwhisker(&cm.n(inst, a, b)?, &tc)?,
                        ],
                        vec![
                            cm.n(inst, a, &Obj::tensor(b, c))?,
                            inst.lwhisker(&ta, &cm.n(inst, b, c)?)?,
                            inst.alpha(&ta, &tb, &tc)?,
                        ],
                    ))
                });
            }
        }
    }
    ck.paths(format!("{tag}comonoidal-mu-unit"), COMONOIDAL_ANCHOR, || {
        Ok((
            vec![cm.monad.mu(inst, &k)?, cm.n_k.clone()],
            vec![t.mor(inst, &cm.n_k)?, cm.n_k.clone()],
        ))
    });
    ck.paths(format!("{tag}comonoidal-eta-unit"), COMONOIDAL_ANCHOR, || {
        Ok((vec![cm.monad.eta(inst, &k)?, cm.n_k.clone()], vec![inst.id(&k)?]))
    });
}

/// The symmetric monoidal endofunctor diagrams and the four
/// comonad-compatibility diagrams.
pub fn monoidal_comonad_laws<I: Instance>(
    ck: &mut Checker<'_, I>,
    tag: &str,
    mc: &MonoidalComonadData<I>,
    objs: &[Obj],
) {
    let inst = ck.inst;
    let c = &mc.comonad;
    let bang = &c.bang;
    let k = Obj::Unit;
    for a in objs {
        let ba = bang.obj(a);
        ck.paths(format!("{tag}monoidal-left-unit[{a}]"), MONOIDAL_COMONAD_ANCHOR, || {
            Ok((
                vec![
                    inst.rwhisker(&mc.m_k, &ba)?,
                    mc.m(inst, &k, a)?,
                    bang.mor(inst, &inst.lunit(a)?)?,
                ],
                vec![inst.lunit(&ba)?],
            ))
        });
        ck.paths(
            format!("{tag}monoidal-right-unit[{a}]"),
            MONOIDAL_COMONAD_ANCHOR,
            || {
                Ok((
                    vec![
                        inst.lwhisker(&ba, &mc.m_k)?,
                        mc.m(inst, a, &k)?,
                        bang.mor(inst, &inst.runit(a)?)?,
                    ],
                    vec![inst.runit(&ba)?],
                ))
            },
        );
        for b in objs {
            let bb = bang.obj(b);
            ck.paths(
                format!("{tag}monoidal-symmetry[{a},{b}]"),
                MONOIDAL_COMONAD_ANCHOR,
                || {
                    Ok((
                        vec![mc.m(inst, a, b)?, bang.mor(inst, &inst.sym(a, b)?)?],
                        vec![inst.sym(&ba, &bb)?, mc.m(inst, b, a)?],
                    ))
                },
            );
            ck.paths(format!("{tag}monoidal-delta[{a},{b}]"), MONOIDAL_COMONAD_ANCHOR, || {
                Ok((
                    vec![mc.m(inst, a, b)?, c.delta(inst, &Obj::tensor(a, b))?],
                    vec![
                        inst.par(&c.delta(inst, a)?, &c.delta(inst, b)?)?,
                        mc.m(inst, &ba, &bb)?,
                        bang.mor(inst, &mc.m(inst, a, b)?)?,
                    ],
                ))
            });
            ck.paths(format!("{tag}monoidal-eps[{a},{b}]"), MONOIDAL_COMONAD_ANCHOR, || {
                Ok((
                    vec![mc.m(inst, a, b)?, c.eps(inst, &Obj::tensor(a, b))?],
                    vec![inst.par(&c.eps(inst, a)?, &c.eps(inst, b)?)?],
                ))
            });
            for cc in objs {
                let bc = bang.obj(cc);
                ck.paths(
                    format!("{tag}monoidal-assoc[{a},{b},{cc}]"),
                    MONOIDAL_COMONAD_ANCHOR,
                    || {
                        Ok((
                            vec![
                                inst.lwhisker(&ba, &mc.m(inst, b, cc)?)?,
                                mc.m(inst, a, &Obj::tensor(b, cc))?,
                                bang.mor(inst, &inst.alpha(a, b, cc)?)?,
                            ],
                            vec![
                                inst.alpha(&ba, &bb, &bc)?,
                                inst.rwhisker(&mc.m(inst, a, b)?, &bc)?,
                                mc.m(inst, &Obj::tensor(a, b), cc)?,
                            ],
                        ))
                    },
                );
            }
        }
    }
    ck.paths(format!("{tag}monoidal-delta-unit"), MONOIDAL_COMONAD_ANCHOR, || {
        Ok((
            vec![mc.m_k.clone(), c.delta(inst, &k)?],
            vec![mc.m_k.clone(), bang.mor(inst, &mc.m_k)?],
        ))
    });
    ck.paths(format!("{tag}monoidal-eps-unit"), MONOIDAL_COMONAD_ANCHOR, || {
        Ok((vec![mc.m_k.clone(), c.eps(inst, &k)?], vec![inst.id(&k)?]))
    });
}

/// `ν ⊗ⁿ ν′ = n_{A,B};(ν⊗ν′)`.
pub fn em_tensor<I: Instance>(
    inst: &I,
    cm: &ComonoidalMonadData<I>,
    x: &AlgebraData<Mor<I>>,
    y: &AlgebraData<Mor<I>>,
) -> Result<AlgebraData<Mor<I>>> {
    Ok(AlgebraData {
        carrier: Obj::tensor(&x.carrier, &y.carrier),
        action: inst.then(&cm.n(inst, &x.carrier, &y.carrier)?, &inst.par(&x.action, &y.action)?)?,
    })
}

/// `(K, n_K)`.
pub fn unit_algebra<I: Instance>(cm: &ComonoidalMonadData<I>) -> AlgebraData<Mor<I>> {
    AlgebraData {
        carrier: Obj::Unit,
        action: cm.n_k.clone(),
    }
}

/// `ω ⊗ᵐ ω′ = (ω⊗ω′);m_{A,B}`.
pub fn em_cotensor<I: Instance>(
    inst: &I,
    mc: &MonoidalComonadData<I>,
    x: &CoalgebraData<Mor<I>>,
    y: &CoalgebraData<Mor<I>>,
) -> Result<CoalgebraData<Mor<I>>> {
    Ok(CoalgebraData {
        carrier: Obj::tensor(&x.carrier, &y.carrier),
        coaction: inst.then(
            &inst.par(&x.coaction, &y.coaction)?,
            &mc.m(inst, &x.carrier, &y.carrier)?,
        )?,
    })
}

/// `(K, m_K)`.
pub fn unit_coalgebra<I: Instance>(mc: &MonoidalComonadData<I>) -> CoalgebraData<Mor<I>> {
    CoalgebraData {
        carrier: Obj::Unit,
        coaction: mc.m_k.clone(),
    }
}

/// A morphism of the Eilenberg-Moore category: a base map plus the
/// algebras it was certified against.
pub struct AlgMor<I: Instance> {
    pub src: AlgebraData<Mor<I>>,
    pub tgt: AlgebraData<Mor<I>>,
    mor: Mor<I>,
}
manual_clone!(AlgMor { src, tgt, mor });

/// The Eilenberg-Moore category of a monad as a view over the base: its
/// morphisms are base morphisms that pass the algebra-morphism check.
pub struct EmView<'a, I: Instance> {
    pub inst: &'a I,
    pub monad: &'a MonadData<I>,
    pub probe: Probe,
}

impl<'a, I: Instance> EmView<'a, I> {
    pub fn new(inst: &'a I, monad: &'a MonadData<I>, probe: Probe) -> Self {
        EmView { inst, monad, probe }
    }

    pub fn lift(&self, f: &Mor<I>, src: &AlgebraData<Mor<I>>, tgt: &AlgebraData<Mor<I>>) -> Result<AlgMor<I>> {
        crate::monoidal::expect_boundary(f, &src.carrier, &tgt.carrier)?;
        if let Some(w) = algebra_morphism_witness(self.inst, self.monad, f, src, tgt, &self.probe)? {
            return Err(Error::Invalid(format!(
                "not an algebra morphism at {}: {} vs {}",
                w.input, w.lhs, w.rhs
            )));
        }
        Ok(AlgMor {
            src: src.clone(),
            tgt: tgt.clone(),
            mor: f.clone(),
        })
    }

    /// The forgetful functor: the underlying base morphism.
    pub fn forget<'b>(&self, f: &'b AlgMor<I>) -> &'b Mor<I> {
        &f.mor
    }

    pub fn compose(&self, f: &AlgMor<I>, g: &AlgMor<I>) -> Result<AlgMor<I>> {
        Ok(AlgMor {
            src: f.src.clone(),
            tgt: g.tgt.clone(),
            mor: self.inst.then(&f.mor, &g.mor)?,
        })
    }
}

/// Checks that `f` lifts to the EM category and that forgetting the lift
/// returns the identical payload.
pub fn lift_fact<I: Instance>(
    ck: &mut Checker<'_, I>,
    name: String,
    anchor: &str,
    view: &EmView<'_, I>,
    f: Result<Mor<I>>,
    src: &AlgebraData<Mor<I>>,
    tgt: &AlgebraData<Mor<I>>,
) {
    ck.fact(name, anchor, || {
        let f = f?;
        let lifted = match view.lift(&f, src, tgt) {
            Ok(l) => l,
            Err(Error::Invalid(msg)) => {
                return Ok(Some(Witness::new(src.carrier.to_string(), msg, "an algebra morphism")))
            }
            Err(e) => return Err(e),
        };
        if !view.inst.payload_eq(view.forget(&lifted), &f) {
            return Ok(Some(Witness::new(
                f_name(&f),
                "forgotten payload differs",
                "identical payload",
            )));
        }
        Ok(None)
    });
}

fn f_name<M: crate::kernel::Morphism>(f: &M) -> String {
    format!("{} → {}", f.dom(), f.cod())
}

/// The tensored algebras are algebras, and α, ℓ, ρ, σ are algebra maps
/// between them, with strict forgetful payloads.
pub fn em_smc_laws<I: Instance>(
    ck: &mut Checker<'_, I>,
    tag: &str,
    cm: &ComonoidalMonadData<I>,
    algebras: &[AlgebraData<Mor<I>>],
) {
    let inst = ck.inst;
    let probe = ck.probe;
    let view = EmView::new(inst, &cm.monad, probe);
    let unit = unit_algebra(cm);
    algebra_laws(ck, &format!("{tag}em-unit:"), &cm.monad, &unit);
    for x in algebras {
        let a = &x.carrier;
        let (kx, xk) = (em_tensor(inst, cm, &unit, x), em_tensor(inst, cm, x, &unit));
        if let (Ok(kx), Ok(xk)) = (kx, xk) {
            lift_fact(
                ck,
                format!("{tag}em-left-unitor[{a}]"),
                EM_ANCHOR,
                &view,
                inst.lunit(a),
                &kx,
                x,
            );
            lift_fact(
                ck,
                format!("{tag}em-right-unitor[{a}]"),
                EM_ANCHOR,
                &view,
                inst.runit(a),
                &xk,
                x,
            );
        }
        for y in algebras {
            let b = &y.carrier;
            match (em_tensor(inst, cm, x, y), em_tensor(inst, cm, y, x)) {
                (Ok(xy), Ok(yx)) => {
                    algebra_laws(ck, &format!("{tag}em-tensor:"), &cm.monad, &xy);
                    lift_fact(
                        ck,
                        format!("{tag}em-symmetry[{a},{b}]"),
                        EM_ANCHOR,
                        &view,
                        inst.sym(a, b),
                        &xy,
                        &yx,
                    );
                }
                (Err(e), _) | (_, Err(e)) => {
                    ck.fact(format!("{tag}em-tensor[{a},{b}]"), EM_ANCHOR, || Err(e));
                }
            }
            for z in algebras {
                let c = &z.carrier;
                let l = em_tensor(inst, cm, y, z).and_then(|yz| em_tensor(inst, cm, x, &yz));
                let r = em_tensor(inst, cm, x, y).and_then(|xy| em_tensor(inst, cm, &xy, z));
                match (l, r) {
                    (Ok(l), Ok(r)) => lift_fact(
                        ck,
                        format!("{tag}em-associator[{a},{b},{c}]"),
                        EM_ANCHOR,
                        &view,
                        inst.alpha(a, b, c),
                        &l,
                        &r,
                    ),
                    (Err(e), _) | (_, Err(e)) => {
                        ck.fact(format!("{tag}em-associator[{a},{b},{c}]"), EM_ANCHOR, || Err(e));
                    }
                }
            }
        }
    }
}

/// `hˡ_{A,B} = n_{A,TB};(1⊗μ_B)` and `hʳ_{A,B} = n_{TA,B};(μ_A⊗1)`.
pub fn fusion_operators<I: Instance>(cm: &ComonoidalMonadData<I>) -> (Family2<I>, Family2<I>) {
    let (c1, c2) = (cm.clone(), cm.clone());
    let hl = family2(move |i: &I, a, b| {
        let t = c1.t();
        i.then(&c1.n(i, a, &t.obj(b))?, &i.lwhisker(&t.obj(a), &c1.monad.mu(i, b)?)?)
    });
    let hr = family2(move |i: &I, a, b| {
        let t = c2.t();
        i.then(&c2.n(i, &t.obj(a), b)?, &i.rwhisker(&c2.monad.mu(i, a)?, &t.obj(b))?)
    });
    (hl, hr)
}

/// Both fusion operators composed with their claimed inverses, both ways.
pub fn hopf_monad_laws<I: Instance>(ck: &mut Checker<'_, I>, tag: &str, hm: &HopfMonadData<I>, objs: &[Obj]) {
    let inst = ck.inst;
    let (hl, hr) = fusion_operators(&hm.cm);
    let t = hm.cm.t();
    for a in objs {
        for b in objs {
            let (ta, tb) = (t.obj(a), t.obj(b));
            let left_dom = t.obj(&Obj::tensor(a, &tb));
            let right_dom = t.obj(&Obj::tensor(&ta, b));
            let cod = Obj::tensor(&ta, &tb);
            ck.paths(format!("{tag}fusion-left-inverse[{a},{b}]"), FUSION_ANCHOR, || {
                Ok((
                    vec![hl(inst, a, b)?, (hm.hl_inv)(inst, a, b)?],
                    vec![inst.id(&left_dom)?],
                ))
            });
            ck.paths(format!("{tag}fusion-left-section[{a},{b}]"), FUSION_ANCHOR, || {
                Ok((vec![(hm.hl_inv)(inst, a, b)?, hl(inst, a, b)?], vec![inst.id(&cod)?]))
            });
            ck.paths(format!("{tag}fusion-right-inverse[{a},{b}]"), FUSION_ANCHOR, || {
                Ok((
                    vec![hr(inst, a, b)?, (hm.hr_inv)(inst, a, b)?],
                    vec![inst.id(&right_dom)?],
                ))
            });
            ck.paths(format!("{tag}fusion-right-section[{a},{b}]"), FUSION_ANCHOR, || {
                Ok((vec![(hm.hr_inv)(inst, a, b)?, hr(inst, a, b)?], vec![inst.id(&cod)?]))
            });
        }
    }
}

/// `μ^∇ = α;(∇⊗1)` and `η^u = ℓ⁻¹;(u⊗1)` on `A⊗−`.
pub fn monoid_to_monad<I: Instance>(m: &MonoidData<Mor<I>>) -> MonadData<I> {
    let a = m.carrier.clone();
    let (a1, a2) = (a.clone(), a.clone());
    let (mult, unit) = (m.mult.clone(), m.unit.clone());
    MonadData {
        t: Functor::left_tensor(&a),
        mu: family(move |i: &I, x| i.then(&i.alpha(&a1, &a1, x)?, &i.rwhisker(&mult, x)?)),
        eta: family(move |i: &I, x| {
            let _ = &a2;
            i.then(&i.lunit_inv(x)?, &i.rwhisker(&unit, x)?)
        }),
        shape: Some(a),
    }
}

/// Adds `n^Δ = (Δ⊗1);τ` and `n^e_K = ρ;e` to the monad of the monoid part.
/// Rejects a comonoid that is not cocommutative.
pub fn bimonoid_to_comonoidal_monad<I: Instance>(
    inst: &I,
    b: &BimonoidData<Mor<I>>,
    probe: Probe,
) -> Result<ComonoidalMonadData<I>> {
    require_cocommutative(inst, &b.comonoid, probe)?;
    comonoidal_monad_unchecked(inst, b)
}

/// As [`bimonoid_to_comonoidal_monad`] without the cocommutativity check;
/// used to build deliberately broken data.
pub fn comonoidal_monad_unchecked<I: Instance>(inst: &I, b: &BimonoidData<Mor<I>>) -> Result<ComonoidalMonadData<I>> {
    let a = b.monoid.carrier.clone();
    let comult = b.comonoid.comult.clone();
    let n =
        family2(move |i: &I, x, y| i.then(&i.rwhisker(&comult, &Obj::tensor(x, y))?, &i.interchange(&a, &a, x, y)?));
    Ok(ComonoidalMonadData {
        monad: monoid_to_monad(&b.monoid),
        n,
        n_k: inst.then(&inst.runit(&b.monoid.carrier)?, &b.comonoid.counit)?,
    })
}

fn shape_of<I: Instance>(t: &MonadData<I>) -> Result<Obj> {
    t.shape
        .clone()
        .ok_or_else(|| Error::Unsupported(format!("monad {} is not of the form A⊗−", t.t.name)))
}

/// `m^μ = (1⊗ρ⁻¹);μ_K;ρ` and `u^η = η_K;ρ`.
pub fn monad_to_monoid<I: Instance>(inst: &I, t: &MonadData<I>) -> Result<MonoidData<Mor<I>>> {
    let a = shape_of(t)?;
    let k = Obj::Unit;
    Ok(MonoidData {
        carrier: a.clone(),
        mult: inst.path(&[
            inst.lwhisker(&a, &inst.runit_inv(&a)?)?,
            t.mu(inst, &k)?,
            inst.runit(&a)?,
        ])?,
        unit: inst.then(&t.eta(inst, &k)?, &inst.runit(&a)?)?,
    })
}

/// `Δ^n = ρ⁻¹;(1⊗ρ⁻¹_K);n_{K,K};(ρ⊗ρ)` and `e^{n_K} = ρ⁻¹;n_K`.
pub fn comonoidal_monad_to_comonoid<I: Instance>(
    inst: &I,
    cm: &ComonoidalMonadData<I>,
) -> Result<ComonoidData<Mor<I>>> {
    let a = shape_of(&cm.monad)?;
    let k = Obj::Unit;
    Ok(ComonoidData {
        carrier: a.clone(),
        comult: inst.path(&[
            inst.runit_inv(&a)?,
            inst.lwhisker(&a, &inst.runit_inv(&k)?)?,
            cm.n(inst, &k, &k)?,
            inst.par(&inst.runit(&a)?, &inst.runit(&a)?)?,
        ])?,
        counit: inst.then(&inst.runit_inv(&a)?, &cm.n_k)?,
    })
}

/// The fusion inverses of `H⊗−` from the antipode:
/// `hˡ⁻¹ = α⁻¹;n_{A,H⊗B};(1⊗(S⊗1));(1⊗μ_B);α⁻¹` and
/// `hʳ⁻¹ = σ;hˡ⁻¹_{B,A};T(σ)`.
pub fn hopf_inverse_from_antipode<I: Instance>(
    h: &HopfMonoidData<Mor<I>>,
    cm: &ComonoidalMonadData<I>,
) -> HopfMonadData<I> {
    let hobj = h.carrier().clone();
    let s = h.antipode.clone();
    let c1 = cm.clone();
    let h1 = hobj.clone();
    let hl_inv = family2(move |i: &I, x, y| {
        let hy = Obj::tensor(&h1, y);
        let hx = Obj::tensor(&h1, x);
        i.path(&[
            i.alpha_inv(&h1, x, &hy)?,
            c1.n(i, x, &hy)?,
            i.lwhisker(&hx, &i.rwhisker(&s, &hy)?)?,
            i.lwhisker(&hx, &c1.monad.mu(i, y)?)?,
            i.alpha_inv(&h1, x, &hy)?,
        ])
    });
    let hl2 = hl_inv.clone();
    let c2 = cm.clone();
    let hr_inv = family2(move |i: &I, x, y| {
        let t = c2.t();
        let (tx, ty) = (t.obj(x), t.obj(y));
        i.path(&[i.sym(&tx, &ty)?, hl2(i, y, x)?, t.mor(i, &i.sym(y, &tx)?)?])
    });
    HopfMonadData {
        cm: cm.clone(),
        hl_inv,
        hr_inv,
    }
}

/// `S^h = ρ⁻¹;ρ⁻¹;(1⊗η_K);hˡ⁻¹_{K,K};α;(n_K⊗ρ);ℓ`.
pub fn antipode_from_fusion<I: Instance>(inst: &I, hm: &HopfMonadData<I>) -> Result<Mor<I>> {
    let h = shape_of(&hm.cm.monad)?;
    let k = Obj::Unit;
    let hk = Obj::tensor(&h, &k);
    inst.path(&[
        inst.runit_inv(&h)?,
        inst.runit_inv(&hk)?,
        inst.lwhisker(&hk, &hm.cm.monad.eta(inst, &k)?)?,
        (hm.hl_inv)(inst, &k, &k)?,
        inst.alpha(&h, &k, &hk)?,
        inst.par(&hm.cm.n_k, &inst.runit(&h)?)?,
        inst.lunit(&h)?,
    ])
}

/// The action on `A⊸B` curried from
/// `γ = (1⊗η_A);hˡ⁻¹;T(1⊗ν);T(ev);ν′`.
pub fn lift_closed_structure<I: Closed>(
    inst: &I,
    hm: &HopfMonadData<I>,
    x: &AlgebraData<Mor<I>>,
    y: &AlgebraData<Mor<I>>,
) -> Result<AlgebraData<Mor<I>>> {
    let t = hm.cm.t();
    let (a, b) = (&x.carrier, &y.carrier);
    let hom = inst.hom_obj(a, b);
    let gamma = inst.path(&[
        inst.lwhisker(&t.obj(&hom), &hm.cm.monad.eta(inst, a)?)?,
        (hm.hl_inv)(inst, &hom, a)?,
        t.mor(inst, &inst.lwhisker(&hom, &x.action)?)?,
        t.mor(inst, &inst.eval(a, b)?)?,
        y.action.clone(),
    ])?;
    Ok(AlgebraData {
        carrier: hom,
        action: inst.curry(&gamma)?,
    })
}

/// The lifted hom is an algebra and `ev` is an algebra morphism out of the
/// tensored algebra.
pub fn lifted_hom_laws<I: Closed>(
    ck: &mut Checker<'_, I>,
    tag: &str,
    hm: &HopfMonadData<I>,
    x: &AlgebraData<Mor<I>>,
    y: &AlgebraData<Mor<I>>,
) {
    let inst = ck.inst;
    let (a, b) = (&x.carrier, &y.carrier);
    match lift_closed_structure(inst, hm, x, y) {
        Ok(hom) => {
            algebra_laws(ck, &format!("{tag}lifted-hom:"), &hm.cm.monad, &hom);
            let view = EmView::new(inst, &hm.cm.monad, ck.probe);
            match em_tensor(inst, &hm.cm, &hom, x) {
                Ok(hx) => lift_fact(
                    ck,
                    format!("{tag}lifted-eval[{a},{b}]"),
                    LIFTED_HOM_ANCHOR,
                    &view,
                    inst.eval(a, b),
                    &hx,
                    y,
                ),
                Err(e) => {
                    ck.fact(format!("{tag}lifted-eval[{a},{b}]"), LIFTED_HOM_ANCHOR, || Err(e));
                }
            }
        }
        Err(e) => {
            ck.fact(format!("{tag}lifted-hom[{a},{b}]"), LIFTED_HOM_ANCHOR, || Err(e));
        }
    }
}

/// Round trips between monoids and monads, and between cocommutative
/// bimonoids and comonoidal monads.
pub fn correspondence_laws<I: Instance>(ck: &mut Checker<'_, I>, tag: &str, b: &BimonoidData<Mor<I>>) {
    let inst = ck.inst;
    let probe = ck.probe;
    let a = &b.monoid.carrier;
    let monad = monoid_to_monad::<I>(&b.monoid);
    let back = monad_to_monoid(inst, &monad);
    ck.equal(
        format!("{tag}monoid-round-trip-mult[{a}]"),
        CORRESPONDENCE_ANCHOR,
        || Ok((back.clone()?.mult, b.monoid.mult.clone())),
    );
    ck.equal(
        format!("{tag}monoid-round-trip-unit[{a}]"),
        CORRESPONDENCE_ANCHOR,
        || Ok((back?.unit, b.monoid.unit.clone())),
    );
    let cm = bimonoid_to_comonoidal_monad(inst, b, probe);
    let co = cm.and_then(|cm| comonoidal_monad_to_comonoid(inst, &cm));
    ck.equal(
        format!("{tag}comonoid-round-trip-comult[{a}]"),
        CORRESPONDENCE_ANCHOR,
        || Ok((co.clone()?.comult, b.comonoid.comult.clone())),
    );
    ck.equal(
        format!("{tag}comonoid-round-trip-counit[{a}]"),
        CORRESPONDENCE_ANCHOR,
        || Ok((co?.counit, b.comonoid.counit.clone())),
    );
}
