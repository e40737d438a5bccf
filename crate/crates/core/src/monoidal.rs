//! Symmetric monoidal, Cartesian and closed structure over any instance,
//! plus their coherence suites.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::instances::Sample;
use crate::kernel::{compose_path, Bounds, Checker, Elem, Instance, Morphism, Obj, Probe, SuiteResult, Witness};

pub const SMC_ANCHOR: &str = "symmetric monoidal category: pentagon, triangle, hexagon, symmetry";
pub const INTERCHANGE_ANCHOR: &str = "interchange map built from associators and symmetry";
pub const CARTESIAN_ANCHOR: &str = "Cartesian monoidal category: unit is terminal, tensor is product";
pub const CLOSED_ANCHOR: &str = "closed structure: evaluation map and currying";

/// Instances whose tensor is a categorical product.
pub trait Cartesian: Instance {
    /// The unique map `A → K`.
    fn terminal(&self, a: &Obj) -> Result<Self::Mor>;
    /// `⟨f, g⟩: C → A⊗B`.
    fn pairing(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor>;
}

/// Instances with an internal hom.
pub trait Closed: Instance {
    fn hom_obj(&self, a: &Obj, b: &Obj) -> Obj;
    /// `ev: (A⊸B)⊗A → B`.
    fn eval(&self, a: &Obj, b: &Obj) -> Result<Self::Mor>;
    /// For `f: C⊗A → B`, the unique `C → (A⊸B)` with `(curry f ⊗ 1);ev = f`.
    fn curry(&self, f: &Self::Mor) -> Result<Self::Mor>;
}

fn unpair(x: &Elem) -> (&Elem, &Elem) {
    x.as_pair().expect("tensor element is a pair")
}

/// Structural maps and shorthands, available on every instance.
pub trait Smc: Instance {
    fn ident(&self, a: &Obj) -> Result<Self::Mor> {
        self.id(a)
    }

    fn then(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor> {
        self.compose(f, g)
    }

    fn path(&self, fs: &[Self::Mor]) -> Result<Self::Mor> {
        compose_path(self, fs)
    }

    fn par(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor> {
        self.tensor(f, g)
    }

    /// `1_A ⊗ f`.
    fn lwhisker(&self, a: &Obj, f: &Self::Mor) -> Result<Self::Mor> {
        self.tensor(&self.id(a)?, f)
    }

    /// `f ⊗ 1_B`.
    fn rwhisker(&self, f: &Self::Mor, b: &Obj) -> Result<Self::Mor> {
        self.tensor(f, &self.id(b)?)
    }

    /// `α: A⊗(B⊗C) → (A⊗B)⊗C`.
    fn alpha(&self, a: &Obj, b: &Obj, c: &Obj) -> Result<Self::Mor> {
        self.from_fn(
            &Obj::tensor(a, &Obj::tensor(b, c)),
            &Obj::tensor(&Obj::tensor(a, b), c),
            Arc::new(|x| {
                let (a, bc) = unpair(x);
                let (b, c) = unpair(bc);
                Elem::pair(Elem::pair(a.clone(), b.clone()), c.clone())
            }),
            Bounds::preserving(),
        )
    }

    fn alpha_inv(&self, a: &Obj, b: &Obj, c: &Obj) -> Result<Self::Mor> {
        self.from_fn(
            &Obj::tensor(&Obj::tensor(a, b), c),
            &Obj::tensor(a, &Obj::tensor(b, c)),
            Arc::new(|x| {
                let (ab, c) = unpair(x);
                let (a, b) = unpair(ab);
                Elem::pair(a.clone(), Elem::pair(b.clone(), c.clone()))
            }),
            Bounds::preserving(),
        )
    }

    /// `ℓ: K⊗A → A`.
    fn lunit(&self, a: &Obj) -> Result<Self::Mor> {
        self.from_fn(
            &Obj::tensor(&Obj::Unit, a),
            a,
            Arc::new(|x| unpair(x).1.clone()),
            Bounds::preserving(),
        )
    }

    fn lunit_inv(&self, a: &Obj) -> Result<Self::Mor> {
        self.from_fn(
            a,
            &Obj::tensor(&Obj::Unit, a),
            Arc::new(|x| Elem::pair(Elem::Star, x.clone())),
            Bounds::preserving(),
        )
    }

    /// `ρ: A⊗K → A`.
    fn runit(&self, a: &Obj) -> Result<Self::Mor> {
        self.from_fn(
            &Obj::tensor(a, &Obj::Unit),
            a,
            Arc::new(|x| unpair(x).0.clone()),
            Bounds::preserving(),
        )
    }

    fn runit_inv(&self, a: &Obj) -> Result<Self::Mor> {
        self.from_fn(
            a,
            &Obj::tensor(a, &Obj::Unit),
            Arc::new(|x| Elem::pair(x.clone(), Elem::Star)),
            Bounds::preserving(),
        )
    }

    /// `σ: A⊗B → B⊗A`.
    fn sym(&self, a: &Obj, b: &Obj) -> Result<Self::Mor> {
        self.from_fn(
            &Obj::tensor(a, b),
            &Obj::tensor(b, a),
            Arc::new(|x| {
                let (a, b) = unpair(x);
                Elem::pair(b.clone(), a.clone())
            }),
            Bounds::preserving(),
        )
    }

    /// `τ: (A⊗B)⊗(C⊗D) → (A⊗C)⊗(B⊗D)` as the five-step composite
    /// `α; (α⁻¹⊗1); ((1⊗σ)⊗1); (α⊗1); α⁻¹`.
    fn interchange(&self, a: &Obj, b: &Obj, c: &Obj, d: &Obj) -> Result<Self::Mor> {
        let ab = Obj::tensor(a, b);
        let ac = Obj::tensor(a, c);
        self.path(&[
            self.alpha(&ab, c, d)?,
            self.rwhisker(&self.alpha_inv(a, b, c)?, d)?,
            self.rwhisker(&self.lwhisker(a, &self.sym(b, c)?)?, d)?,
            self.rwhisker(&self.alpha(a, c, b)?, d)?,
            self.alpha_inv(&ac, b, d)?,
        ])
    }
}

impl<I: Instance> Smc for I {}

/// Pentagon, triangle, hexagon, symmetry and iso checks over every
/// combination of the given objects.
pub fn check_smc_coherence<I: Instance>(inst: &I, objs: &[Obj], probe: Probe) -> SuiteResult {
    let mut ck = Checker::new(inst, probe);
    for a in objs {
        ck.equal(format!("left-unitor-iso[{a}]"), SMC_ANCHOR, || {
            Ok((inst.then(&inst.lunit_inv(a)?, &inst.lunit(a)?)?, inst.id(a)?))
        });
        ck.equal(format!("right-unitor-iso[{a}]"), SMC_ANCHOR, || {
            Ok((inst.then(&inst.runit_inv(a)?, &inst.runit(a)?)?, inst.id(a)?))
        });
        ck.paths(format!("unit-symmetry[{a}]"), SMC_ANCHOR, || {
            Ok((vec![inst.sym(a, &Obj::Unit)?, inst.lunit(a)?], vec![inst.runit(a)?]))
        });
        for b in objs {
            ck.paths(format!("symmetry-involution[{a},{b}]"), SMC_ANCHOR, || {
                Ok((
                    vec![inst.sym(a, b)?, inst.sym(b, a)?],
                    vec![inst.id(&Obj::tensor(a, b))?],
                ))
            });
            ck.paths(format!("triangle[{a},{b}]"), SMC_ANCHOR, || {
                Ok((
                    vec![inst.alpha(a, &Obj::Unit, b)?, inst.rwhisker(&inst.runit(a)?, b)?],
                    vec![inst.lwhisker(a, &inst.lunit(b)?)?],
                ))
            });
            for c in objs {
                ck.paths(format!("associator-iso[{a},{b},{c}]"), SMC_ANCHOR, || {
                    Ok((
                        vec![inst.alpha(a, b, c)?, inst.alpha_inv(a, b, c)?],
                        vec![inst.id(&Obj::tensor(a, &Obj::tensor(b, c)))?],
                    ))
                });
                ck.paths(format!("hexagon[{a},{b},{c}]"), SMC_ANCHOR, || {
                    Ok((
                        vec![
                            inst.alpha(a, b, c)?,
                            inst.sym(&Obj::tensor(a, b), c)?,
                            inst.alpha(c, a, b)?,
                        ],
                        vec![
                            inst.lwhisker(a, &inst.sym(b, c)?)?,
                            inst.alpha(a, c, b)?,
                            inst.rwhisker(&inst.sym(a, c)?, b)?,
                        ],
                    ))
                });
                for d in objs {
                    ck.paths(format!("pentagon[{a},{b},{c},{d}]"), SMC_ANCHOR, || {
                        Ok((
                            vec![
                                inst.alpha(a, b, &Obj::tensor(c, d))?,
                                inst.alpha(&Obj::tensor(a, b), c, d)?,
                            ],
                            vec![
                                inst.lwhisker(a, &inst.alpha(b, c, d)?)?,
                                inst.alpha(a, &Obj::tensor(b, c), d)?,
                                inst.rwhisker(&inst.alpha(a, b, c)?, d)?,
                            ],
                        ))
                    });
                }
            }
        }
    }
    ck.finish("smc-coherence", SMC_ANCHOR)
}

/// Naturality squares of α, ℓ, ρ, σ and τ on sampled maps between the
/// given finite objects.
pub fn check_naturality<I: Sample>(inst: &I, objs: &[Obj], samples: usize, seed: u64, probe: Probe) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ck = Checker::new(inst, probe);
    for s in 0..samples {
        let pick = |k: usize| &objs[(s * 7 + k * 3) % objs.len()];
        let (a, b, c, d) = (pick(0), pick(1), pick(2), pick(3));
        let (a2, b2, c2, d2) = (pick(4), pick(5), pick(6), pick(7));
        let f = inst.sample(a, a2, &mut rng);
        let g = inst.sample(b, b2, &mut rng);
        let h = inst.sample(c, c2, &mut rng);
        let k = inst.sample(d, d2, &mut rng);
        let (f, g, h, k) = match (f, g, h, k) {
            (Ok(f), Ok(g), Ok(h), Ok(k)) => (f, g, h, k),
            _ => continue,
        };
        ck.paths(format!("alpha-natural#{s}"), SMC_ANCHOR, || {
            Ok((
                vec![inst.par(&f, &inst.par(&g, &h)?)?, inst.alpha(a2, b2, c2)?],
                vec![inst.alpha(a, b, c)?, inst.par(&inst.par(&f, &g)?, &h)?],
            ))
        });
        ck.paths(format!("lunit-natural#{s}"), SMC_ANCHOR, || {
            Ok((
                vec![inst.lwhisker(&Obj::Unit, &f)?, inst.lunit(a2)?],
                vec![inst.lunit(a)?, f.clone()],
            ))
        });
        ck.paths(format!("runit-natural#{s}"), SMC_ANCHOR, || {
            Ok((
                vec![inst.rwhisker(&f, &Obj::Unit)?, inst.runit(a2)?],
                vec![inst.runit(a)?, f.clone()],
            ))
        });
        ck.paths(format!("sym-natural#{s}"), SMC_ANCHOR, || {
            Ok((
                vec![inst.par(&f, &g)?, inst.sym(a2, b2)?],
                vec![inst.sym(a, b)?, inst.par(&g, &f)?],
            ))
        });
        ck.paths(format!("interchange-natural#{s}"), INTERCHANGE_ANCHOR, || {
            Ok((
                vec![
                    inst.par(&inst.par(&f, &g)?, &inst.par(&h, &k)?)?,
                    inst.interchange(a2, b2, c2, d2)?,
                ],
                vec![
                    inst.interchange(a, b, c, d)?,
                    inst.par(&inst.par(&f, &h)?, &inst.par(&g, &k)?)?,
                ],
            ))
        });
    }
    ck.finish("smc-naturality", SMC_ANCHOR)
}

/// `τ;τ = id` and τ agrees with the direct regrouping of components.
pub fn check_interchange<I: Instance>(inst: &I, objs: &[Obj], probe: Probe) -> SuiteResult {
    let mut ck = Checker::new(inst, probe);
    for a in objs {
        for b in objs {
            for c in objs {
                for d in objs {
                    let tag = format!("[{a},{b},{c},{d}]");
                    ck.paths(format!("interchange-involution{tag}"), INTERCHANGE_ANCHOR, || {
                        let dom = Obj::tensor(&Obj::tensor(a, b), &Obj::tensor(c, d));
                        Ok((
                            vec![inst.interchange(a, b, c, d)?, inst.interchange(a, c, b, d)?],
                            vec![inst.id(&dom)?],
                        ))
                    });
                    ck.equal(format!("interchange-regroups{tag}"), INTERCHANGE_ANCHOR, || {
                        let direct = inst.from_fn(
                            &Obj::tensor(&Obj::tensor(a, b), &Obj::tensor(c, d)),
                            &Obj::tensor(&Obj::tensor(a, c), &Obj::tensor(b, d)),
                            Arc::new(|x| {
                                let (ab, cd) = unpair(x);
                                let ((a, b), (c, d)) = (unpair(ab), unpair(cd));
                                Elem::pair(Elem::pair(a.clone(), c.clone()), Elem::pair(b.clone(), d.clone()))
                            }),
                            Bounds::preserving(),
                        )?;
                        Ok((inst.interchange(a, b, c, d)?, direct))
                    });
                }
            }
        }
    }
    ck.finish("interchange", INTERCHANGE_ANCHOR)
}

/// The two projections out of `A⊗B` built from terminal maps.
pub fn projections<I: Cartesian>(inst: &I, a: &Obj, b: &Obj) -> Result<(I::Mor, I::Mor)> {
    let p1 = inst.then(&inst.lwhisker(a, &inst.terminal(b)?)?, &inst.runit(a)?)?;
    let p2 = inst.then(&inst.rwhisker(&inst.terminal(a)?, b)?, &inst.lunit(b)?)?;
    Ok((p1, p2))
}

/// `Δ_A = ⟨1,1⟩` and `t_A`: the comonoid every object carries in a
/// Cartesian instance.
pub fn cartesian_comonoid<I: Cartesian>(inst: &I, a: &Obj) -> Result<(I::Mor, I::Mor)> {
    let id = inst.id(a)?;
    Ok((inst.pairing(&id, &id)?, inst.terminal(a)?))
}

/// Projection laws on sampled pairs, and uniqueness of `t_A`.
pub fn check_cartesian<I>(inst: &I, objs: &[Obj], seed: u64, probe: Probe) -> SuiteResult
where
    I: Cartesian + Sample + crate::instances::Enumerable,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ck = Checker::new(inst, probe);
    for (i, c) in objs.iter().enumerate() {
        let a = &objs[(i + 1) % objs.len()];
        let b = &objs[(i + 2) % objs.len()];
        let (Ok(f), Ok(g)) = (inst.sample(c, a, &mut rng), inst.sample(c, b, &mut rng)) else {
            continue;
        };
        ck.paths(format!("pairing-first[{c}→{a},{b}]"), CARTESIAN_ANCHOR, || {
            Ok((vec![inst.pairing(&f, &g)?, projections(inst, a, b)?.0], vec![f.clone()]))
        });
        ck.paths(format!("pairing-second[{c}→{a},{b}]"), CARTESIAN_ANCHOR, || {
            Ok((vec![inst.pairing(&f, &g)?, projections(inst, a, b)?.1], vec![g.clone()]))
        });
        ck.fact(format!("terminal-unique[{c}]"), CARTESIAN_ANCHOR, || {
            let all = inst.all_maps(c, &Obj::Unit)?;
            Ok((all.len() != 1).then(|| Witness::new(c.to_string(), format!("{} maps to K", all.len()), "1")))
        });
    }
    ck.finish("cartesian", CARTESIAN_ANCHOR)
}

/// The closed triangle `(curry f ⊗ 1);ev = f` on sampled `f`, and
/// uniqueness of the curried map by exhaustion when the hom is small.
pub fn check_closed<I: Closed + Sample + crate::instances::Enumerable>(
    inst: &I,
    objs: &[Obj],
    seed: u64,
    probe: Probe,
    uniqueness: bool,
) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ck = Checker::new(inst, probe);
    for (i, c) in objs.iter().enumerate() {
        let a = &objs[(i + 1) % objs.len()];
        let b = &objs[(i + 2) % objs.len()];
        let Ok(f) = inst.sample(&Obj::tensor(c, a), b, &mut rng) else {
            continue;
        };
        ck.paths(format!("closed-triangle[{c},{a},{b}]"), CLOSED_ANCHOR, || {
            let cf = inst.curry(&f)?;
            Ok((vec![inst.rwhisker(&cf, a)?, inst.eval(a, b)?], vec![f.clone()]))
        });
        if uniqueness {
            ck.fact(format!("curry-unique[{c},{a},{b}]"), CLOSED_ANCHOR, || {
                let ev = inst.eval(a, b)?;
                let mut hits = 0usize;
                for h in inst.all_maps(c, &inst.hom_obj(a, b))? {
                    let lhs = inst.then(&inst.rwhisker(&h, a)?, &ev)?;
                    if inst.compare(&lhs, &f, &probe)?.is_none() {
                        hits += 1;
                    }
                }
                Ok((hits != 1).then(|| Witness::new(format!("{c},{a},{b}"), format!("{hits} solutions"), "1")))
            });
        }
    }
    ck.finish("closed", CLOSED_ANCHOR)
}

/// Rejects a morphism whose boundary differs from the expected one.
pub fn expect_boundary<M: Morphism>(f: &M, dom: &Obj, cod: &Obj) -> Result<()> {
    if f.dom() != dom {
        return Err(Error::boundary(dom, f.dom()));
    }
    if f.cod() != cod {
        return Err(Error::boundary(cod, f.cod()));
    }
    Ok(())
}
