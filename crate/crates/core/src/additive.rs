//! Additive structure on hom-sets, the bimonoid `(!A, ∇_A, u_A, Δ_A, e_A)`
//! it induces through a modality, negatives from `−1_K`, and the deriving
//! transformation of the multiset modality.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hopf::{
    antipode_laws, bimonoid_laws, cocommutativity, commutativity, BimonoidData, HopfMonoidData, MonoidData,
};
use crate::instances::{FinRel, Rel, Sample};
use crate::kernel::{bags, Bounds, Checker, Elem, Instance, Morphism, Obj, Probe, Witness};
use crate::lifting::{free_lifting, omega_natural, trivial_algebra, DistLawData, LiftingMonadBundle};
use crate::modality::{multiset_modality, MonoidalCoalgebraModalityData};
use crate::monadic::{
    bimonoid_to_comonoidal_monad, comonoidal_monad_unchecked, family, naturality, ComonoidalMonadData, Family, Functor,
    Mor,
};
use crate::monoidal::Smc;

pub const ADDITIVE_ANCHOR: &str = "additive category: hom-sets are commutative monoids and composition is bilinear";
pub const NEGATIVES_ANCHOR: &str = "negatives: −f = ℓ⁻¹;(−1_K⊗f);ℓ from an additive inverse of 1_K";
pub const NABLA_ANCHOR: &str = "∇_A and u_A make !A a commutative and cocommutative bimonoid";
pub const CONVOLUTION_ANCHOR: &str = "convolution: !(f+g) = Δ;(!f⊗!g);∇ and !(0) = e;u";
pub const ANTIPODE_NEG_ANCHOR: &str = "with negatives, S_A = !(−1_A) is an antipode for the bimonoid on !A";
pub const DERIVING_ANCHOR: &str = "deriving transformation d: !X⊗X → !X";
pub const MONOIDAL_RULE_ANCHOR: &str = "deriving transformation compatible with m";
pub const DISTDERIVE_ANCHOR: &str = "differential mixed distributive law: λ commutes with d";

/// Hom-sets enriched over commutative monoids.
pub trait Additive: Instance {
    fn add(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor>;
    fn zero(&self, a: &Obj, b: &Obj) -> Result<Self::Mor>;
    /// The instance's own negation, when hom-sets are abelian groups.
    fn native_neg(&self, f: &Self::Mor) -> Option<Result<Self::Mor>>;
}

/// Commutative-monoid laws on one hom-set, bilinearity of composition and
/// additivity of ⊗, on maps `f, g, h: A → B`, `k: B → C`, `p: C → A`.
#[allow(clippy::too_many_arguments)]
pub fn additive_laws<I: Additive>(
    ck: &mut Checker<'_, I>,
    tag: &str,
    f: &Mor<I>,
    g: &Mor<I>,
    h: &Mor<I>,
    k: &Mor<I>,
    p: &Mor<I>,
) {
    let inst = ck.inst;
    let (a, b) = (f.dom().clone(), f.cod().clone());
    let c = k.cod().clone();
    let s = format!("{a}→{b}");
    ck.equal(format!("{tag}add-assoc[{s}]"), ADDITIVE_ANCHOR, || {
        Ok((inst.add(&inst.add(f, g)?, h)?, inst.add(f, &inst.add(g, h)?)?))
    });
    ck.equal(format!("{tag}add-comm[{s}]"), ADDITIVE_ANCHOR, || {
        Ok((inst.add(f, g)?, inst.add(g, f)?))
    });
    ck.equal(format!("{tag}add-unit[{s}]"), ADDITIVE_ANCHOR, || {
        Ok((inst.add(f, &inst.zero(&a, &b)?)?, f.clone()))
    });
    ck.equal(format!("{tag}compose-left-additive[{s}]"), ADDITIVE_ANCHOR, || {
        Ok((
            inst.then(&inst.add(f, g)?, k)?,
            inst.add(&inst.then(f, k)?, &inst.then(g, k)?)?,
        ))
    });
    ck.equal(format!("{tag}compose-right-additive[{s}]"), ADDITIVE_ANCHOR, || {
        Ok((
            inst.then(p, &inst.add(f, g)?)?,
            inst.add(&inst.then(p, f)?, &inst.then(p, g)?)?,
        ))
    });
    ck.equal(format!("{tag}compose-zero[{s}]"), ADDITIVE_ANCHOR, || {
        Ok((inst.then(&inst.zero(&a, &b)?, k)?, inst.zero(&a, &c)?))
    });
    ck.equal(format!("{tag}tensor-additive[{s}]"), ADDITIVE_ANCHOR, || {
        Ok((
            inst.par(&inst.add(f, g)?, h)?,
            inst.add(&inst.par(f, h)?, &inst.par(g, h)?)?,
        ))
    });
    ck.equal(format!("{tag}tensor-zero[{s}]"), ADDITIVE_ANCHOR, || {
        Ok((
            inst.par(&inst.zero(&a, &b)?, h)?,
            inst.zero(&Obj::tensor(&a, h.dom()), &Obj::tensor(&b, h.cod()))?,
        ))
    });
    if let Some(neg) = inst.native_neg(f) {
        ck.equal(format!("{tag}native-inverse[{s}]"), ADDITIVE_ANCHOR, || {
            Ok((inst.add(f, &neg?)?, inst.zero(&a, &b)?))
        });
    }
}

/// Runs [`additive_laws`] on `samples` random tuples over the given objects.
pub fn sampled_additive_laws<I: Additive + Sample>(
    ck: &mut Checker<'_, I>,
    tag: &str,
    objs: &[Obj],
    samples: usize,
    seed: u64,
) {
    let inst = ck.inst;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = objs.len();
    for s in 0..samples {
        let (a, b, c) = (&objs[s % n], &objs[(s / n) % n], &objs[(s / (n * n) + s) % n]);
        let maps = (|| -> Result<_> {
            Ok((
                inst.sample(a, b, &mut rng)?,
                inst.sample(a, b, &mut rng)?,
                inst.sample(a, b, &mut rng)?,
                inst.sample(b, c, &mut rng)?,
                inst.sample(c, a, &mut rng)?,
            ))
        })();
        match maps {
            Ok((f, g, h, k, p)) => additive_laws(ck, &format!("{tag}#{s}:"), &f, &g, &h, &k, &p),
            Err(e) => {
                ck.fact(format!("{tag}sample#{s}"), ADDITIVE_ANCHOR, || Err(e));
            }
        }
    }
}

/// Negation on every hom-set derived from an additive inverse of `1_K`.
pub struct Negation<I: Instance> {
    pub neg_one_k: Mor<I>,
}

impl<I: Additive> Negation<I> {
    /// `−f = ℓ⁻¹;(−1_K⊗f);ℓ`.
    pub fn neg(&self, inst: &I, f: &Mor<I>) -> Result<Mor<I>> {
        inst.path(&[
            inst.lunit_inv(f.dom())?,
            inst.par(&self.neg_one_k, f)?,
            inst.lunit(f.cod())?,
        ])
    }
}

/// Accepts `neg_one_k` only if `1_K + neg_one_k = 0_{K,K}`.
pub fn negatives_from_unit<I: Additive>(inst: &I, neg_one_k: &Mor<I>, probe: &Probe) -> Result<Negation<I>> {
    let k = Obj::Unit;
    crate::monoidal::expect_boundary(neg_one_k, &k, &k)?;
    let sum = inst.add(&inst.id(&k)?, neg_one_k)?;
    if let Some(w) = inst.compare(&sum, &inst.zero(&k, &k)?, probe)? {
        return Err(Error::Invalid(format!(
            "1_K + (−1_K) ≠ 0 at {}: {} vs {}",
            w.input, w.lhs, w.rhs
        )));
    }
    Ok(Negation {
        neg_one_k: neg_one_k.clone(),
    })
}

/// `f + (−f) = 0` for each map, and agreement with the instance's own
/// negation where it has one.
pub fn negation_laws<I: Additive>(ck: &mut Checker<'_, I>, tag: &str, neg: &Negation<I>, maps: &[Mor<I>]) {
    let inst = ck.inst;
    for (k, f) in maps.iter().enumerate() {
        let s = format!("{}→{}#{k}", f.dom(), f.cod());
        ck.equal(format!("{tag}neg-inverse[{s}]"), NEGATIVES_ANCHOR, || {
            Ok((inst.add(f, &neg.neg(inst, f)?)?, inst.zero(f.dom(), f.cod())?))
        });
        if let Some(native) = inst.native_neg(f) {
            ck.equal(format!("{tag}neg-native[{s}]"), NEGATIVES_ANCHOR, || {
                Ok((neg.neg(inst, f)?, native?))
            });
        }
    }
}

/// Every relation `K → K` tried as `−1_K`. Returns the number examined and
/// those satisfying `1_K ∪ r = ∅`.
pub fn finrel_negatives_search(inst: &FinRel) -> Result<(usize, Vec<Rel>)> {
    let k = Obj::Unit;
    let candidates = inst.all_relations(&k, &k)?;
    let n = candidates.len();
    let probe = Probe::exhaustive(0);
    let valid = candidates
        .into_iter()
        .filter(|r| negatives_from_unit(inst, r, &probe).is_ok())
        .collect();
    Ok((n, valid))
}

/// `∇_A = (δ⊗δ);m_{!A,!A};!(((ε⊗e);ρ) + ((e⊗ε);ℓ))`, before degree bounds
/// are attached.
pub fn additive_nabla_raw<I: Additive>(inst: &I, mmd: &MonoidalCoalgebraModalityData<I>, a: &Obj) -> Result<Mor<I>> {
    let md = &mmd.modality;
    let ba = md.bang().obj(a);
    let (eps, e) = (md.eps(inst, a)?, md.counit(inst, a)?);
    let left = inst.then(&inst.par(&eps, &e)?, &inst.runit(a)?)?;
    let right = inst.then(&inst.par(&e, &eps)?, &inst.lunit(a)?)?;
    let delta = md.delta(inst, a)?;
    inst.path(&[
        inst.par(&delta, &delta)?,
        mmd.m(inst, &ba, &ba)?,
        md.bang().mor(inst, &inst.add(&left, &right)?)?,
    ])
}

/// `u_A = m_K;!(0_{K,A})`, before degree bounds are attached.
pub fn additive_unit_raw<I: Additive>(inst: &I, mmd: &MonoidalCoalgebraModalityData<I>, a: &Obj) -> Result<Mor<I>> {
    inst.then(&mmd.m_k, &mmd.bang().mor(inst, &inst.zero(&Obj::Unit, a)?)?)
}

/// Declared bounds of `∇_A`: it preserves degree.
pub fn nabla_bounds() -> Bounds {
    Bounds::preserving()
}

/// Declared bounds of `u_A`: only degree-0 outputs.
pub fn unit_bounds() -> Bounds {
    Bounds::constant(0, 0)
}

/// `∇_A` with its declared bounds; the derived ones grow with every
/// composite and make nested multiplications intractable.
pub fn additive_nabla<I: Additive>(inst: &I, mmd: &MonoidalCoalgebraModalityData<I>, a: &Obj) -> Result<Mor<I>> {
    Ok(inst.with_bounds(&additive_nabla_raw(inst, mmd, a)?, nabla_bounds()))
}

/// `u_A` with its declared bounds.
pub fn additive_unit<I: Additive>(inst: &I, mmd: &MonoidalCoalgebraModalityData<I>, a: &Obj) -> Result<Mor<I>> {
    Ok(inst.with_bounds(&additive_unit_raw(inst, mmd, a)?, unit_bounds()))
}

/// `(!A, ∇_A, u_A, Δ_A, e_A)`.
pub fn build_additive_bimonoid<I: Additive>(
    inst: &I,
    mmd: &MonoidalCoalgebraModalityData<I>,
    a: &Obj,
) -> Result<BimonoidData<Mor<I>>> {
    let carrier = mmd.bang().obj(a);
    Ok(BimonoidData {
        monoid: MonoidData {
            carrier: carrier.clone(),
            mult: additive_nabla(inst, mmd, a)?,
            unit: additive_unit(inst, mmd, a)?,
        },
        comonoid: mmd.modality.comonoid(inst, a)?,
    })
}

/// The bimonoid suite, commutativity, cocommutativity, the two ε
/// triangles, and ∇, u as !-coalgebra morphisms.
pub fn additive_bimonoid_laws<I: Additive>(
    ck: &mut Checker<'_, I>,
    tag: &str,
    mmd: &MonoidalCoalgebraModalityData<I>,
    a: &Obj,
    b: &BimonoidData<Mor<I>>,
) {
    let inst = ck.inst;
    let md = &mmd.modality;
    let ba = md.bang().obj(a);
    bimonoid_laws(ck, tag, b);
    crate::hopf::monoid_laws(ck, tag, &b.monoid);
    crate::hopf::comonoid_laws(ck, tag, &b.comonoid);
    commutativity(ck, tag, &b.monoid);
    cocommutativity(ck, tag, &b.comonoid);
    let probe = ck.probe;
    ck.fact(format!("{tag}nabla-degree-bounds[{a}]"), NABLA_ANCHOR, || {
        inst.bounds_violation(&additive_nabla_raw(inst, mmd, a)?, &nabla_bounds(), &probe)
    });
    ck.fact(format!("{tag}unit-degree-bounds[{a}]"), NABLA_ANCHOR, || {
        inst.bounds_violation(&additive_unit_raw(inst, mmd, a)?, &unit_bounds(), &probe)
    });
    ck.equal(format!("{tag}nabla-eps[{a}]"), NABLA_ANCHOR, || {
        let (eps, e) = (md.eps(inst, a)?, md.counit(inst, a)?);
        let left = inst.then(&inst.par(&eps, &e)?, &inst.runit(a)?)?;
        let right = inst.then(&inst.par(&e, &eps)?, &inst.lunit(a)?)?;
        Ok((inst.then(&b.monoid.mult, &eps)?, inst.add(&left, &right)?))
    });
    ck.equal(format!("{tag}unit-eps[{a}]"), NABLA_ANCHOR, || {
        Ok((inst.then(&b.monoid.unit, &md.eps(inst, a)?)?, inst.zero(&Obj::Unit, a)?))
    });
    ck.paths(format!("{tag}nabla-coalgebra-map[{a}]"), NABLA_ANCHOR, || {
        let delta = md.delta(inst, a)?;
        Ok((
            vec![
                inst.par(&delta, &delta)?,
                mmd.m(inst, &ba, &ba)?,
                md.bang().mor(inst, &b.monoid.mult)?,
            ],
            vec![b.monoid.mult.clone(), delta.clone()],
        ))
    });
    ck.paths(format!("{tag}unit-coalgebra-map[{a}]"), NABLA_ANCHOR, || {
        Ok((
            vec![mmd.m_k.clone(), md.bang().mor(inst, &b.monoid.unit)?],
            vec![b.monoid.unit.clone(), md.delta(inst, a)?],
        ))
    });
}

/// `!(f+g) = Δ_A;(!f⊗!g);∇_B` and `!(0) = e_A;u_B` for `f, g: A → B`.
pub fn convolution_laws<I: Additive>(
    ck: &mut Checker<'_, I>,
    tag: &str,
    mmd: &MonoidalCoalgebraModalityData<I>,
    f: &Mor<I>,
    g: &Mor<I>,
) {
    let inst = ck.inst;
    let md = &mmd.modality;
    let (a, b) = (f.dom().clone(), f.cod().clone());
    let s = format!("{a}→{b}");
    ck.paths(format!("{tag}convolution-sum[{s}]"), CONVOLUTION_ANCHOR, || {
        Ok((
            vec![md.bang().mor(inst, &inst.add(f, g)?)?],
            vec![
                md.comult(inst, &a)?,
                inst.par(&md.bang().mor(inst, f)?, &md.bang().mor(inst, g)?)?,
                additive_nabla(inst, mmd, &b)?,
            ],
        ))
    });
    ck.paths(format!("{tag}convolution-zero[{s}]"), CONVOLUTION_ANCHOR, || {
        Ok((
            vec![md.bang().mor(inst, &inst.zero(&a, &b)?)?],
            vec![md.counit(inst, &a)?, additive_unit(inst, mmd, &b)?],
        ))
    });
}

/// Convolution identities on `samples` sampled pairs between finite objects.
pub fn sampled_convolution_laws<I: Additive + Sample>(
    ck: &mut Checker<'_, I>,
    tag: &str,
    mmd: &MonoidalCoalgebraModalityData<I>,
    objs: &[Obj],
    samples: usize,
    seed: u64,
) {
    let inst = ck.inst;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = objs.len();
    for s in 0..samples {
        let (a, b) = (&objs[s % n], &objs[(s / n) % n]);
        match (inst.sample(a, b, &mut rng), inst.sample(a, b, &mut rng)) {
            (Ok(f), Ok(g)) => convolution_laws(ck, &format!("{tag}#{s}:"), mmd, &f, &g),
            (Err(e), _) | (_, Err(e)) => {
                ck.fact(format!("{tag}sample#{s}"), CONVOLUTION_ANCHOR, || Err(e));
            }
        }
    }
}

/// `{((B₁,B₂), B₁⊔B₂)}`, computed by merging bags directly.
pub fn bag_union_oracle(a: &Obj) -> Rel {
    let ba = Obj::bang(a);
    Rel::lazy(&Obj::tensor(&ba, &ba), &ba, Bounds::preserving(), |x, _| {
        Ok(match x.as_pair().map(|(l, r)| (l.as_bag(), r.as_bag())) {
            Some((Some(l), Some(r))) => vec![Elem::bag(bags::union(l, r))],
            _ => vec![],
        })
    })
}

/// `{(∗, ∅)}`.
pub fn empty_bag_unit(a: &Obj) -> Rel {
    Rel::lazy(&Obj::Unit, &Obj::bang(a), Bounds::constant(0, 0), |_, _| {
        Ok(vec![Elem::empty_bag()])
    })
}

/// `∇_A` and `u_A` of the multiset modality against the direct oracles.
pub fn multiset_nabla_oracle_laws(
    ck: &mut Checker<'_, FinRel>,
    tag: &str,
    mmd: &MonoidalCoalgebraModalityData<FinRel>,
    a: &Obj,
) {
    let inst = ck.inst;
    ck.equal(format!("{tag}nabla-is-bag-union[{a}]"), NABLA_ANCHOR, || {
        Ok((additive_nabla(inst, mmd, a)?, bag_union_oracle(a)))
    });
    ck.equal(format!("{tag}unit-is-empty-bag[{a}]"), NABLA_ANCHOR, || {
        Ok((additive_unit(inst, mmd, a)?, empty_bag_unit(a)))
    });
}

/// `S_A = !(−1_A)`. Refuses instances without native negatives.
pub fn antipode_from_negatives<I: Additive>(
    inst: &I,
    mmd: &MonoidalCoalgebraModalityData<I>,
    neg: &Negation<I>,
    a: &Obj,
) -> Result<Mor<I>> {
    if inst.native_neg(&inst.id(&Obj::Unit)?).is_none() {
        return Err(Error::Unsupported(format!(
            "no qualifying instance registered: {} has no negatives",
            inst.name()
        )));
    }
    mmd.bang().mor(inst, &neg.neg(inst, &inst.id(a)?)?)
}

/// `−1_K = m_K;S_K;ε_K`.
pub fn neg_one_from_antipode<I: Instance>(
    inst: &I,
    mmd: &MonoidalCoalgebraModalityData<I>,
    s_k: &Mor<I>,
) -> Result<Mor<I>> {
    inst.path(&[mmd.m_k.clone(), s_k.clone(), mmd.modality.eps(inst, &Obj::Unit)?])
}

/// The Hopf diagrams of `(!A, ∇, u, Δ, e, S)` for a given `S`.
pub fn antipode_on_bang_laws<I: Additive>(
    ck: &mut Checker<'_, I>,
    tag: &str,
    mmd: &MonoidalCoalgebraModalityData<I>,
    a: &Obj,
    s: &Mor<I>,
) {
    let inst = ck.inst;
    match build_additive_bimonoid(inst, mmd, a) {
        Ok(b) => antipode_laws(
            ck,
            tag,
            &HopfMonoidData {
                bimonoid: b,
                antipode: s.clone(),
            },
        ),
        Err(e) => {
            ck.fact(format!("{tag}bimonoid[{a}]"), ANTIPODE_NEG_ANCHOR, || Err(e));
        }
    }
}

/// `d_X = {((B,x), B⊔[x])}`.
pub fn rel_deriving(x: &Obj) -> Rel {
    let bx = Obj::bang(x);
    Rel::lazy(&Obj::tensor(&bx, x), &bx, Bounds::shift(1), |p, _| {
        Ok(match p.as_pair() {
            Some((b, e)) => match b.as_bag() {
                Some(items) => vec![Elem::bag(bags::union(items, std::slice::from_ref(e)))],
                None => vec![],
            },
            None => vec![],
        })
    })
}

pub fn rel_deriving_transformation() -> Family<FinRel> {
    family(|_: &FinRel, x| Ok(rel_deriving(x)))
}

/// `(1⊗d_B);m_{A,B} = (Δ_A⊗1);τ;(1⊗(ε_A⊗1));(m_{A,B}⊗1);d_{A⊗B}`.
pub fn monoidal_rule_laws<I: Instance>(
    ck: &mut Checker<'_, I>,
    tag: &str,
    mmd: &MonoidalCoalgebraModalityData<I>,
    d: &Family<I>,
    objs: &[Obj],
) {
    let inst = ck.inst;
    let md = &mmd.modality;
    for a in objs {
        let ba = md.bang().obj(a);
        for b in objs {
            let bb = md.bang().obj(b);
            let ab = Obj::tensor(a, b);
            ck.paths(format!("{tag}monoidal-rule[{a},{b}]"), MONOIDAL_RULE_ANCHOR, || {
                Ok((
                    vec![inst.lwhisker(&ba, &d(inst, b)?)?, mmd.m(inst, a, b)?],
                    vec![
                        inst.rwhisker(&md.comult(inst, a)?, &Obj::tensor(&bb, b))?,
                        inst.interchange(&ba, &ba, &bb, b)?,
                        inst.lwhisker(&Obj::tensor(&ba, &bb), &inst.rwhisker(&md.eps(inst, a)?, b)?)?,
                        inst.rwhisker(&mmd.m(inst, a, b)?, &ab)?,
                        d(inst, &ab)?,
                    ],
                ))
            });
        }
    }
}

/// `T(d_X);λ_X = n_{!X,X};(λ_X⊗1);d_{TX}`.
pub fn distderive_laws<I: Instance>(
    ck: &mut Checker<'_, I>,
    tag: &str,
    law: &DistLawData<I>,
    cm: &ComonoidalMonadData<I>,
    d: &Family<I>,
    objs: &[Obj],
) {
    let inst = ck.inst;
    let t = &law.monad.t;
    let b = &law.comonad.bang;
    for x in objs {
        let tx = t.obj(x);
        ck.paths(format!("{tag}distderive[{x}]"), DISTDERIVE_ANCHOR, || {
            Ok((
                vec![t.mor(inst, &d(inst, x)?)?, law.lambda(inst, x)?],
                vec![
                    cm.n(inst, &b.obj(x), x)?,
                    inst.rwhisker(&law.lambda(inst, x)?, &tx)?,
                    d(inst, &tx)?,
                ],
            ))
        });
    }
}

/// Naturality of `d: !(−)⊗(−) → !(−)` on the given maps.
pub fn deriving_naturality<I: Instance>(
    ck: &mut Checker<'_, I>,
    tag: &str,
    mmd: &MonoidalCoalgebraModalityData<I>,
    d: &Family<I>,
    maps: &[Mor<I>],
) {
    let bang = mmd.bang().clone();
    let b2 = bang.clone();
    let src = Functor::new("!⊗1", move |x| Obj::tensor(&b2.obj(x), x), {
        let b3 = bang.clone();
        move |i: &I, f| i.par(&b3.mor(i, f)?, f)
    });
    naturality(ck, &format!("{tag}deriving"), DERIVING_ANCHOR, &src, &bang, d, maps);
}

/// The exponential lifting monad `!A⊗−` from the bimonoid on `!A`, with
/// `λ = ω♮` at the cofree coalgebra `(!A, δ_A)`. With `u_to_singleton`,
/// `u_A` relates `∗` to the singleton of the first element of `A` instead.
pub fn object_exponential_bundle(
    inst: &FinRel,
    a: &Obj,
    u_to_singleton: bool,
    probe: Probe,
) -> Result<LiftingMonadBundle<FinRel>> {
    let mmd = multiset_modality(inst, true);
    let mut b = build_additive_bimonoid(inst, &mmd, a)?;
    if u_to_singleton {
        let first = a
            .finite_elements(inst.budget)?
            .into_iter()
            .next()
            .ok_or_else(|| Error::Config(format!("u-to-singleton needs a nonempty base, got {a}")))?;
        b.monoid.unit = Rel::lazy(&Obj::Unit, &Obj::bang(a), Bounds::constant(1, 0), move |_, _| {
            Ok(vec![Elem::bag(vec![first.clone()])])
        });
    }
    let cm = if u_to_singleton {
        comonoidal_monad_unchecked(inst, &b)?
    } else {
        bimonoid_to_comonoidal_monad(inst, &b, probe)?
    };
    let coalg = mmd.modality.comonad.cofree(inst, a)?;
    let sl = omega_natural(&mmd, &cm, &coalg);
    let mu_sharp = free_lifting(&sl.law);
    let x = Obj::base("X", &["x"]);
    let algebras = vec![trivial_algebra(inst, &b, &x)?, cm.monad.free_algebra(inst, &Obj::Unit)?];
    let coalgebras = vec![coalg.clone(), mmd.modality.comonad.cofree(inst, &x)?];
    Ok(LiftingMonadBundle {
        name: "exp-a-rel".to_string(),
        bimonoid: b,
        antipode: None,
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

/// Witness for a search that should have found `expected` items.
pub fn search_witness(what: &str, found: usize, expected: usize) -> Option<Witness> {
    (found != expected).then(|| Witness::new(what.to_string(), format!("{found} found"), format!("{expected}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{MatQ, ZeroCat};
    use crate::modality::identity_modality;

    #[test]
    fn finrel_has_no_negatives() {
        let (n, valid) = finrel_negatives_search(&FinRel::default()).unwrap();
        assert_eq!(n, 2);
        assert!(valid.is_empty());
    }

    #[test]
    fn matq_minus_one_is_accepted() {
        let m = MatQ::default();
        let k = Obj::Unit;
        let neg1 = m.scale(&crate::instances::matq::q(-1), &m.id(&k).unwrap());
        assert!(negatives_from_unit(&m, &neg1, &Probe::exhaustive(0)).is_ok());
        assert!(negatives_from_unit(&m, &m.id(&k).unwrap(), &Probe::exhaustive(0)).is_err());
    }

    #[test]
    fn deriving_adjoins() {
        let x = Obj::base("X", &["a"]);
        let d = rel_deriving(&x);
        let a = Elem::atom("a");
        let img = d.image(&Elem::pair(Elem::empty_bag(), a.clone()), 5).unwrap();
        assert_eq!(img.as_slice(), &[Elem::bag(vec![a.clone()])]);
        let img = d.image(&Elem::pair(Elem::bag(vec![a.clone()]), a.clone()), 5).unwrap();
        assert_eq!(img.as_slice(), &[Elem::bag(vec![a.clone(), a])]);
    }

    #[test]
    fn zero_category_antipode_round_trip() {
        let z = ZeroCat;
        let mmd = identity_modality(&z).unwrap();
        let k = Obj::Unit;
        let neg = negatives_from_unit(&z, &z.id(&k).unwrap(), &Probe::exhaustive(0)).unwrap();
        let a = Obj::base("A", &["0"]);
        let s = antipode_from_negatives(&z, &mmd, &neg, &a).unwrap();
        assert!(z.payload_eq(&s, &z.id(&a).unwrap()));
        let s_k = antipode_from_negatives(&z, &mmd, &neg, &k).unwrap();
        let back = neg_one_from_antipode(&z, &mmd, &s_k).unwrap();
        assert!(z.payload_eq(&back, &neg.neg_one_k));
    }

    #[test]
    fn finrel_antipode_refused() {
        let r = FinRel::default();
        let mmd = multiset_modality(&r, true);
        let k = Obj::Unit;
        let neg = Negation {
            neg_one_k: r.id(&k).unwrap(),
        };
        let err = antipode_from_negatives(&r, &mmd, &neg, &k).unwrap_err();
        assert!(err.to_string().contains("no qualifying instance"));
    }
}
