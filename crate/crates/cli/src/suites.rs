//! The verification suites. Each suite draws from its own ChaCha stream
//! seeded by (seed, suite name), so suites can run in any order or in parallel.

use std::time::Instant;

use ellidiff_core::difflimit::{
    apply_m12, gauge_identity_residual, hbar_coefficients, inozemtsev_residual, InozemtsevCouplings, JetFunction,
    PlaneWave, ThetaPair, DEFAULT_H0,
};
use ellidiff_core::diffops::{
    bethe_residual, bethe_solutions, build_h_pm, build_m, build_m_tilde, constant_k, f_factor, g_factor, h_factor,
    k_four_term_sum, lame_eigen_residual, lemma22_lhs, op_distance, Degree, DifferenceOperator, PlusMinus,
};
use ellidiff_core::elliptic::{
    addition_residuals, half_period_residuals, parity_residual, quasi_periodicity_residual, sigma_law_residual,
    EllipticModulus, HalfPeriods, ThetaKind,
};
use ellidiff_core::face_weights::{admissible_faces, w11, ybe_residual};
use ellidiff_core::sampling::{retry, sample_complex, sample_point};
use ellidiff_core::spectra::{
    basis_f, eigen_residual_with, eigenvalue, mixed_eigen_residual, preservation_residual, th1_membership_residual,
    theta_mu, theta_product, LatticeClass, ThetaMethod,
};
use ellidiff_core::vandiejen::{
    identification_residual, identification_residual_with, u_pair1, vd_commutator_residual, vd_w, VDParams,
};
use ellidiff_core::weight::{WeightPoint, WeylElement};
use ellidiff_core::Result;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{Suite, SuiteConfig};
use crate::report::{CheckRecord, Expect};

/// Pinned tolerances.
pub mod tol {
    pub const THETA: f64 = 1e-11;
    pub const SIGMA: f64 = 1e-10;
    pub const YBE: f64 = 1e-9;
    pub const IDENTITY_FACE: f64 = 1e-12;
    pub const COMMUTE: f64 = 1e-9;
    pub const LEMMA_K_VARIANCE: f64 = 1e-20;
    pub const LEMMA_K: f64 = 1e-10;
    pub const FACTORIZATION: f64 = 1e-10;
    pub const LAME: f64 = 1e-10;
    pub const BETHE: f64 = 1e-11;
    pub const IDENTIFICATION: f64 = 1e-8;
    pub const SPECIALIZATION: f64 = 1e-12;
    pub const VD_COMMUTE: f64 = 1e-7;
    pub const EIGEN: f64 = 1e-10;
    pub const EXACT: f64 = 0.0;
    pub const BASIS: f64 = 1e-11;
    pub const MEMBERSHIP: f64 = 1e-10;
    pub const PRESERVE: f64 = 1e-9;
    pub const LIMIT_CONSTANT: f64 = 1e-6;
    pub const GAUGE_FORM: f64 = 1e-7;
    pub const ODD_ORDERS: f64 = 1e-12;
    pub const INOZEMTSEV: f64 = 1e-8;
    /// Lower bound a negative control must exceed.
    pub const CONTROL: f64 = 1e-3;
}

/// Fixed sample counts, used as floors when `samples` is smaller.
const LEMMA_K_POINTS: usize = 50;
const IDENTIFICATION_POINTS: usize = 30;
const VD_DRAWS: usize = 5;
const PRESERVE_POINTS: usize = 10;
const LIMIT_POINTS: usize = 10;

/// Quantities shared by every check of a run.
pub struct Setup {
    pub tau: Complex64,
    pub hbar: Complex64,
    pub m: EllipticModulus,
    pub hp: HalfPeriods,
    pub n: usize,
}

impl Setup {
    /// Expects a validated configuration.
    pub fn new(cfg: &SuiteConfig) -> Result<Self> {
        let tau = cfg.tau.0;
        Ok(Self {
            tau,
            hbar: cfg.hbar.0,
            m: EllipticModulus::new(tau)?,
            hp: HalfPeriods::from_modulus(cfg.omega1.0, tau)?,
            n: cfg.samples,
        })
    }

    fn omega1(&self) -> Complex64 {
        self.hp.omega1()
    }
}

type Rng8 = ChaCha8Rng;

struct Runner<'a> {
    suite: Suite,
    setup: &'a Setup,
    rng: Rng8,
    tol_override: Option<f64>,
    records: Vec<CheckRecord>,
}

impl<'a> Runner<'a> {
    /// Evaluates a group of checks sharing one closure; entry k of the
    /// returned vector is the residual of checks[k] = (name, anchor, tolerance).
    fn group<F>(&mut self, checks: &[(&str, &str, f64)], expect: Expect, samples: usize, f: F)
    where
        F: FnOnce(&mut Rng8, &Setup) -> Result<Vec<f64>>,
    {
        let start = Instant::now();
        let out = f(&mut self.rng, self.setup);
        let ms = start.elapsed().as_secs_f64() * 1e3 / checks.len() as f64;
        for (k, &(name, anchor, tolerance)) in checks.iter().enumerate() {
            let tolerance = match (expect, self.tol_override) {
                (Expect::AtMost, Some(t)) => t,
                _ => tolerance,
            };
            let rec = match &out {
                Ok(v) => CheckRecord::evaluated(self.suite, name, anchor, v[k], tolerance, expect, samples, ms),
                Err(e) => CheckRecord::failed(self.suite, name, anchor, tolerance, expect, e.to_string(), ms),
            };
            self.records.push(rec);
        }
    }

    fn check<F>(&mut self, name: &str, anchor: &str, tolerance: f64, expect: Expect, samples: usize, f: F)
    where
        F: FnOnce(&mut Rng8, &Setup) -> Result<f64>,
    {
        self.group(&[(name, anchor, tolerance)], expect, samples, |r, s| Ok(vec![f(r, s)?]));
    }
}

/// Componentwise worst case of `f` over `count` draws, each retried on poles.
/// A NaN anywhere is kept so that it fails the check.
fn worst<const N: usize, F>(rng: &mut Rng8, count: usize, mut f: F) -> Result<Vec<f64>>
where
    F: FnMut(&mut Rng8) -> Result<[f64; N]>,
{
    let mut acc = [0.0f64; N];
    for _ in 0..count {
        let r = retry(rng, &mut f)?;
        for (a, v) in acc.iter_mut().zip(r) {
            if v.is_nan() || !(v <= *a) {
                *a = if a.is_nan() { *a } else { v };
            }
        }
    }
    Ok(acc.to_vec())
}

fn worst1<F>(rng: &mut Rng8, count: usize, mut f: F) -> Result<f64>
where
    F: FnMut(&mut Rng8) -> Result<f64>,
{
    Ok(worst::<1, _>(rng, count, |r| Ok([f(r)?]))?[0])
}

/// z with Re ∈ [−½, ½] and |Im| ≤ 0.3 Im τ.
fn sample_z(rng: &mut Rng8, tau: Complex64) -> Complex64 {
    Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.3..0.3) * tau.im)
}

/// ħ perturbed by up to half its size in each component.
fn sample_hbar(rng: &mut Rng8, hbar: Complex64) -> Complex64 {
    hbar * (1.0 + sample_complex(rng, 0.5))
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1.0)
}

/// op_distance at a fresh sample point.
fn distance_at(rng: &mut Rng8, s: &Setup, a: &DifferenceOperator, b: &DifferenceOperator) -> Result<f64> {
    op_distance(a, b, &[sample_point(rng, s.tau)])
}

fn theta(r: &mut Runner) {
    let count = 5 * r.setup.n;
    r.check(
        "theta.quasi-periodicity",
        "theta quasi-periodicity under z -> z + a + b tau",
        tol::THETA,
        Expect::AtMost,
        count,
        |rng, s| {
            worst1(rng, count, |rng| {
                let z = sample_z(rng, s.tau);
                let mut w: f64 = 0.0;
                for kind in ThetaKind::ALL {
                    let (a, b) = (rng.gen_range(-2..=2), rng.gen_range(-2..=2));
                    w = w.max(quasi_periodicity_residual(kind, z, a, b, &s.m)?);
                }
                Ok(w)
            })
        },
    );
    r.check("theta.half-period", "theta_1 at the three half periods", tol::THETA, Expect::AtMost, count, |rng, s| {
        worst1(rng, count, |rng| Ok(half_period_residuals(sample_z(rng, s.tau), &s.m)?.into_iter().fold(0.0, f64::max)))
    });
    let names = [
        ("theta.addition-44", "theta_4 theta_4 product formula at doubled modulus", tol::THETA),
        ("theta.addition-33", "theta_3 theta_3 product formula at doubled modulus", tol::THETA),
        ("theta.addition-22", "theta_2 theta_2 product formula at doubled modulus", tol::THETA),
        ("theta.addition-11", "theta_1 theta_1 product formula at doubled modulus", tol::THETA),
    ];
    r.group(&names, Expect::AtMost, count, |rng, s| {
        worst::<4, _>(rng, count, |rng| addition_residuals(sample_z(rng, s.tau), sample_z(rng, s.tau), &s.m))
    });
    r.check("theta.parity", "theta_1 odd, theta_2..4 even", tol::THETA, Expect::AtMost, count, |rng, s| {
        worst1(rng, count, |rng| {
            let z = sample_z(rng, s.tau);
            ThetaKind::ALL.iter().try_fold(0.0f64, |w, k| Ok(w.max(parity_residual(*k, z, &s.m)?)))
        })
    });
    r.check(
        "theta.sigma-quasi-periodicity",
        "sigma under z -> z + 2 omega_r",
        tol::SIGMA,
        Expect::AtMost,
        count,
        |rng, s| worst1(rng, count, |rng| sigma_law_residual(2.0 * s.omega1() * sample_z(rng, s.tau), &s.hp)),
    );
}

fn ybe(r: &mut Runner) {
    let count = 5 * r.setup.n;
    r.check(
        "ybe.residual",
        "dynamical Yang-Baxter equation of type (1,1,1)",
        tol::YBE,
        Expect::AtMost,
        count,
        |rng, s| {
            worst1(rng, count, |rng| {
                let lam = sample_point(rng, s.tau);
                let (u, v, w) = (sample_complex(rng, 0.3), sample_complex(rng, 0.3), sample_complex(rng, 0.3));
                ybe_residual(&lam, u, v, w, sample_hbar(rng, s.hbar), &s.m)
            })
        },
    );
    let n = r.setup.n;
    r.check(
        "ybe.identity-face",
        "W_11 at u = 0 is the identity face",
        tol::IDENTITY_FACE,
        Expect::AtMost,
        n,
        |rng, s| {
            worst1(rng, n, |rng| {
                let lam = sample_point(rng, s.tau);
                let mut w: f64 = 0.0;
                for f in admissible_faces(lam, Complex64::new(0.0, 0.0), s.hbar, s.m) {
                    let want = if f.top == f.left && f.right == f.bottom { 1.0 } else { 0.0 };
                    w = w.max((w11(&f)? - want).norm());
                }
                Ok(w)
            })
        },
    );
}

fn commute(r: &mut Runner) {
    let n = r.setup.n;
    let pairs = [(1, 1), (1, 2), (2, 1), (2, 2)];
    for (d1, d2) in pairs {
        let name = format!("commute.m{d1}-m{d2}");
        let anchor = format!("[M_{d1}(u), M_{d2}(v)] = 0");
        r.check(&name, &anchor, tol::COMMUTE, Expect::AtMost, n, |rng, s| {
            let (d1, d2) = (Degree::try_from(d1)?, Degree::try_from(d2)?);
            worst1(rng, n, |rng| {
                let (u, v) = (sample_complex(rng, 0.3), sample_complex(rng, 0.3));
                let a = build_m(d1, u, s.hbar, s.m)?;
                let b = build_m(d2, v, s.hbar, s.m)?;
                let pts: Vec<WeightPoint> = (0..4).map(|_| sample_point(rng, s.tau)).collect();
                op_distance(&a.compose(&b)?, &b.compose(&a)?, &pts)
            })
        });
    }
}

fn lemma_k(r: &mut Runner) {
    let count = LEMMA_K_POINTS.max(r.setup.n);
    let values: Result<Vec<Complex64>> = {
        let (rng, s) = (&mut r.rng, r.setup);
        (0..count).map(|_| retry(rng, |rng| lemma22_lhs(&sample_point(rng, s.tau), s.hbar, &s.m))).collect()
    };
    let names = [
        ("lemma-k.variance", "zero-shift potential sum is independent of lambda (variance)", tol::LEMMA_K_VARIANCE),
        ("lemma-k.constant", "zero-shift potential sum equals -(four-term theta sum)", tol::LEMMA_K),
    ];
    let vals = values.clone();
    r.group(&names, Expect::AtMost, count, move |_, s| {
        let v = vals?;
        let mean: Complex64 = v.iter().sum::<Complex64>() / v.len() as f64;
        let var = v.iter().map(|x| (x - mean).norm_sqr()).sum::<f64>() / v.len() as f64;
        let k = constant_k(s.hbar, &s.m)?;
        let dev = v.iter().map(|x| (x - k).norm()).fold(0.0, f64::max);
        Ok(vec![var, dev])
    });
    r.check(
        "lemma-k.printed-sign",
        "the four-term sum with a plus sign is not the constant",
        tol::CONTROL,
        Expect::Above,
        count,
        move |_, s| {
            let sum = k_four_term_sum(s.hbar, &s.m)?;
            Ok(values?.iter().map(|x| (x - sum).norm()).fold(f64::INFINITY, f64::min))
        },
    );
}

fn factorization(r: &mut Runner) {
    let n = r.setup.n;
    let (h, m) = (r.setup.hbar, r.setup.m);
    let hp = build_h_pm(PlusMinus::Plus, h, m);
    let hm = build_h_pm(PlusMinus::Minus, h, m);
    let ops = (|| -> Result<_> {
        let prod = hp.compose(&hm)?;
        let rev = hm.compose(&hp)?;
        let squares = hp.compose(&hp)?.add(&hm.compose(&hm)?)?;
        Ok((prod, rev, squares))
    })();
    let m1 = build_m_tilde(Degree::One, h, m);
    let m2 = build_m_tilde(Degree::Two, h, m);
    let names = [
        ("factorization.h-plus-h-minus", "H+ H- = M~_1", tol::FACTORIZATION),
        ("factorization.squares", "H+^2 + H-^2 = M~_2", tol::FACTORIZATION),
        ("factorization.h-commute", "H+ H- = H- H+", tol::FACTORIZATION),
    ];
    r.group(&names, Expect::AtMost, n, |rng, s| {
        let (prod, rev, squares) = ops?;
        worst::<3, _>(rng, n, |rng| {
            Ok([
                distance_at(rng, s, &prod, &m1)?,
                distance_at(rng, s, &squares, &m2)?,
                distance_at(rng, s, &prod, &rev)?,
            ])
        })
    });
    r.check(
        "factorization.u-dependence-m1",
        "M_1(u) = F(u) M~_1 up to u",
        tol::FACTORIZATION,
        Expect::AtMost,
        n,
        |rng, s| {
            worst1(rng, n, |rng| {
                let (u, v) = (sample_complex(rng, 0.3), sample_complex(rng, 0.3));
                let a = build_m(Degree::One, u, s.hbar, s.m)?.scale(f_factor(u, s.hbar, &s.m)?.inv());
                let b = build_m(Degree::One, v, s.hbar, s.m)?.scale(f_factor(v, s.hbar, &s.m)?.inv());
                distance_at(rng, s, &a, &b)
            })
        },
    );
    r.check(
        "factorization.u-dependence-m2",
        "M_2(u) = G(u)(M~_2 + K - H(u))",
        tol::FACTORIZATION,
        Expect::AtMost,
        n,
        |rng, s| {
            let k = constant_k(s.hbar, &s.m)?;
            worst1(rng, n, |rng| {
                let u = sample_complex(rng, 0.3);
                let lhs = build_m(Degree::Two, u, s.hbar, s.m)?.scale(g_factor(u, s.hbar, &s.m)?.inv());
                let shift = k - h_factor(u, s.hbar, &s.m)?;
                let rhs = m2.add(&DifferenceOperator::identity(s.hbar, s.m).scale(shift))?;
                distance_at(rng, s, &lhs, &rhs)
            })
        },
    );
}

fn lame(r: &mut Runner) {
    let n = r.setup.n;
    for (kind, label) in [(ThetaKind::Two, 2), (ThetaKind::Three, 3), (ThetaKind::Four, 4)] {
        let name = format!("lame.theta{label}");
        let anchor = format!("theta_{label} is a difference-Lame eigenfunction at l = 1");
        r.check(&name, &anchor, tol::LAME, Expect::AtMost, n, |rng, s| {
            worst1(rng, n, |rng| lame_eigen_residual(kind, sample_z(rng, s.tau), s.hbar, &s.m))
        });
    }
    r.check(
        "lame.bethe",
        "Bethe equations at the three explicit solutions",
        tol::BETHE,
        Expect::AtMost,
        n,
        |rng, s| {
            let sols = bethe_solutions(&s.m);
            worst1(rng, n, |rng| {
                let h = sample_hbar(rng, s.hbar);
                sols.iter().try_fold(0.0f64, |w, (t, c)| Ok(w.max(bethe_residual(*t, *c, h, &s.m)?)))
            })
        },
    );
    r.check(
        "lame.bethe-control",
        "a non-solution violates the Bethe equations",
        tol::CONTROL,
        Expect::Above,
        1,
        |_, s| bethe_residual(Complex64::new(0.3, 0.0), Complex64::new(0.0, 0.0), s.hbar, &s.m),
    );
}

fn vandiejen(r: &mut Runner) {
    let count = IDENTIFICATION_POINTS.max(r.setup.n);
    let names = [
        ("vandiejen.identification-1", "phi M~_1 phi^-1 = c H_1 at the special parameters", tol::IDENTIFICATION),
        (
            "vandiejen.identification-2",
            "phi M~_2 phi^-1 = c (H_2 + 2 H_1) at the special parameters",
            tol::IDENTIFICATION,
        ),
    ];
    r.group(&names, Expect::AtMost, count, |rng, s| {
        worst::<2, _>(rng, count, |rng| {
            let x = sample_point(rng, s.tau).scaled(2.0 * s.omega1());
            let (a, b) = identification_residual(s.hbar, &s.hp, &[x])?;
            Ok([a, b])
        })
    });
    let n = r.setup.n;
    let names = [
        ("vandiejen.w-identity", "w = 1 at the special parameters", tol::SPECIALIZATION),
        ("vandiejen.u-pair-vanishes", "U_{12,1} = 0 at the special parameters", tol::SPECIALIZATION),
    ];
    r.group(&names, Expect::AtMost, n, |rng, s| {
        let p = VDParams::specialized(2.0 * s.omega1() * s.hbar, s.hp);
        worst::<2, _>(rng, n, |rng| {
            let x = sample_point(rng, s.tau).scaled(2.0 * s.omega1());
            Ok([(vd_w(x.l1, &p)? - 1.0).norm(), u_pair1(&x, &p)?.norm()])
        })
    });
    r.check(
        "vandiejen.commutator",
        "[H_1, H_2] = 0 at general parameters",
        tol::VD_COMMUTE,
        Expect::AtMost,
        VD_DRAWS,
        |rng, s| {
            let gamma = 2.0 * s.omega1() * s.hbar;
            worst1(rng, VD_DRAWS, |rng| {
                let p = VDParams::random(rng, 0.3, gamma, s.hp)?;
                let pts: Vec<WeightPoint> = (0..3).map(|_| sample_point(rng, s.tau).scaled(2.0 * s.omega1())).collect();
                vd_commutator_residual(&p, &pts)
            })
        },
    );
    r.check(
        "vandiejen.wrong-mu-control",
        "the identification fails away from mu = -gamma",
        tol::CONTROL,
        Expect::Above,
        3,
        |rng, s| {
            let gamma = 2.0 * s.omega1() * s.hbar;
            let p = VDParams::specialized(gamma, s.hp).with_mu(-gamma + 0.05);
            let pts: Vec<WeightPoint> = (0..3).map(|_| sample_point(rng, s.tau).scaled(2.0 * s.omega1())).collect();
            let (a, b) = identification_residual_with(&p, s.hbar, &pts)?;
            Ok(a.min(b))
        },
    );
}

fn eigen(r: &mut Runner) {
    let n = r.setup.n;
    let (h, m) = (r.setup.hbar, r.setup.m);
    let ops = [build_m_tilde(Degree::One, h, m), build_m_tilde(Degree::Two, h, m)];
    for (di, d) in Degree::ALL.into_iter().enumerate() {
        for i in 1..=3u8 {
            let name = format!("eigen.m{}-f{i}", d.value());
            let anchor = format!("M~_{} f_{i} = E_{{{},{i}}} f_{i}", d.value(), d.value());
            let op = &ops[di];
            r.check(&name, &anchor, tol::EIGEN, Expect::AtMost, n, |rng, s| {
                worst1(rng, n, |rng| eigen_residual_with(op, d, i, &sample_point(rng, s.tau), &s.m))
            });
        }
    }
    r.check("eigen.e2-equals-2e1", "E_{2,i} = 2 E_{1,i}", tol::EXACT, Expect::AtMost, 3, |_, s| {
        (1..=3u8).try_fold(0.0f64, |w, i| {
            Ok(w.max(
                (eigenvalue(Degree::Two, i, s.hbar, &s.m)? - 2.0 * eigenvalue(Degree::One, i, s.hbar, &s.m)?).norm(),
            ))
        })
    });
    r.check(
        "eigen.f0-annihilated",
        "M~_d f_0 = 0 for the antisymmetric f_0",
        tol::EIGEN,
        Expect::AtMost,
        n,
        |rng, s| {
            worst1(rng, n, |rng| {
                let lam = sample_point(rng, s.tau);
                let a = eigen_residual_with(&ops[0], Degree::One, 0, &lam, &s.m)?;
                let b = eigen_residual_with(&ops[1], Degree::Two, 0, &lam, &s.m)?;
                Ok(a.max(b))
            })
        },
    );
    r.check(
        "eigen.mixed-products",
        "theta_a(l+) theta_b(l-) diagonalize H+ H-",
        tol::EIGEN,
        Expect::AtMost,
        n,
        |rng, s| {
            worst1(rng, n, |rng| {
                let (i, j) = (rng.gen_range(1..=3u8), rng.gen_range(1..=3u8));
                mixed_eigen_residual(i, j, &sample_point(rng, s.tau), s.hbar, &s.m)
            })
        },
    );
}

fn basis(r: &mut Runner) {
    let n = r.setup.n;
    r.check(
        "basis.lattice-vs-product",
        "lattice sums of Theta_mu equal their theta products",
        tol::BASIS,
        Expect::AtMost,
        n,
        |rng, s| {
            worst1(rng, n, |rng| {
                let lam = sample_point(rng, s.tau);
                let classes = [LatticeClass::Zero, LatticeClass::E1, LatticeClass::E2, LatticeClass::E1E2];
                classes.iter().try_fold(0.0f64, |w, c| {
                    let a = theta_mu(*c, &lam, &s.m, ThetaMethod::Lattice)?;
                    let b = theta_mu(*c, &lam, &s.m, ThetaMethod::Product)?;
                    Ok(w.max(rel(a, b)))
                })
            })
        },
    );
    r.check("basis.factorization", "f_i = theta_{i+1}(l+) theta_{i+1}(l-)", tol::BASIS, Expect::AtMost, n, |rng, s| {
        worst1(rng, n, |rng| {
            let lam = sample_point(rng, s.tau);
            (1..=3u8).try_fold(0.0f64, |w, i| Ok(w.max(rel(basis_f(i, &lam, &s.m)?, theta_product(i, i, &lam, &s.m)?))))
        })
    });
    r.check("basis.weyl-invariance", "f_1, f_2, f_3 are Weyl invariant", tol::BASIS, Expect::AtMost, n, |rng, s| {
        worst1(rng, n, |rng| {
            let lam = sample_point(rng, s.tau);
            let mut w: f64 = 0.0;
            for g in WeylElement::all() {
                for i in 1..=3u8 {
                    w = w.max(rel(basis_f(i, &g.act(&lam), &s.m)?, basis_f(i, &lam, &s.m)?));
                }
            }
            Ok(w)
        })
    });
    r.check(
        "basis.level-one",
        "f_1, f_2, f_3 have the level-one quasi-periodicity",
        tol::MEMBERSHIP,
        Expect::AtMost,
        n,
        |rng, s| {
            worst1(rng, n, |rng| {
                let lam = sample_point(rng, s.tau);
                (1..=3u8)
                    .try_fold(0.0f64, |w, i| Ok(w.max(th1_membership_residual(|x| basis_f(i, x, &s.m), &lam, &s.m)?)))
            })
        },
    );
}

fn preserve(r: &mut Runner) {
    for d in Degree::ALL {
        let name = format!("preserve.m{}", d.value());
        let anchor = format!("M~_{} preserves span(S_0, S_L1, S_L2)", d.value());
        r.check(&name, &anchor, tol::PRESERVE, Expect::AtMost, PRESERVE_POINTS, |rng, s| {
            retry(rng, |rng| {
                let fit = [sample_point(rng, s.tau), sample_point(rng, s.tau), sample_point(rng, s.tau)];
                let validate: Vec<WeightPoint> = (0..PRESERVE_POINTS).map(|_| sample_point(rng, s.tau)).collect();
                preservation_residual(d, s.hbar, &s.m, &fit, &validate)
            })
        });
    }
}

fn difflimit(r: &mut Runner) {
    let count = LIMIT_POINTS;
    let names = [
        ("difflimit.constant-4", "M~_1 = 4 + O(hbar^2)", tol::LIMIT_CONSTANT),
        ("difflimit.constant-8", "M~_2 = 8 + O(hbar^2)", tol::LIMIT_CONSTANT),
        ("difflimit.c2-ratio", "hbar^2 coefficient of M~_2 is twice that of M~_1", tol::LIMIT_CONSTANT),
    ];
    r.group(&names, Expect::AtMost, count, |rng, s| {
        worst::<3, _>(rng, count, |rng| {
            let lam = sample_point(rng, s.tau);
            let f = PlaneWave::new(1, 0);
            let fv = f.value(&lam, &s.m)?;
            let k1 = hbar_coefficients(Degree::One, &f, &lam, DEFAULT_H0, &s.m)?;
            let k2 = hbar_coefficients(Degree::Two, &f, &lam, DEFAULT_H0, &s.m)?;
            Ok([(k1.c0 / fv - 4.0).norm(), (k2.c0 / fv - 8.0).norm(), (k2.c2 - 2.0 * k1.c2).norm()])
        })
    });
    let names = [
        ("difflimit.second-order", "hbar^2 coefficient of M~_1 is the operator M_12", tol::LIMIT_CONSTANT),
        ("difflimit.odd-orders", "odd powers of hbar vanish", tol::ODD_ORDERS),
    ];
    r.group(&names, Expect::AtMost, count, |rng, s| {
        worst::<2, _>(rng, count, |rng| {
            let lam = sample_point(rng, s.tau);
            let f = ThetaPair::new(ThetaKind::Two, ThetaKind::Three);
            let k1 = hbar_coefficients(Degree::One, &f, &lam, DEFAULT_H0, &s.m)?;
            let k2 = hbar_coefficients(Degree::Two, &f, &lam, DEFAULT_H0, &s.m)?;
            Ok([rel(k1.c2, apply_m12(&f, &lam, &s.m)?), k1.odd.max(k2.odd)])
        })
    });
    let names = [
        (
            "difflimit.gauge-laplacian",
            "Delta^-1 M_12 Delta = Laplacian + 4((log theta_1)''(l+) + (log theta_1)''(l-))",
            tol::GAUGE_FORM,
        ),
        ("difflimit.gauge-square", "Delta^-1 (M_24 - 2 M_14) Delta = D^2", tol::GAUGE_FORM),
    ];
    r.group(&names, Expect::AtMost, count, |rng, s| {
        worst::<2, _>(rng, count, |rng| {
            let lam = sample_point(rng, s.tau);
            let (a1, a2) = gauge_identity_residual(&lam, &s.m, &PlaneWave::new(1, -1))?;
            let (b1, b2) = gauge_identity_residual(&lam, &s.m, &ThetaPair::new(ThetaKind::Three, ThetaKind::Four))?;
            Ok([a1.max(b1), a2.max(b2)])
        })
    });
    r.check(
        "difflimit.inozemtsev",
        "gauged potential differs from the Inozemtsev potential by a constant",
        tol::INOZEMTSEV,
        Expect::AtMost,
        count,
        |rng, s| {
            let k = InozemtsevCouplings::default();
            worst1(rng, count, |rng| {
                let (a, b) = (sample_point(rng, s.tau), sample_point(rng, s.tau));
                inozemtsev_residual(&a, &b, &s.hp, &k)
            })
        },
    );
    r.check(
        "difflimit.inozemtsev-control",
        "boundary couplings g_r != 0 break the constancy",
        tol::CONTROL,
        Expect::Above,
        2,
        |rng, s| {
            let k = InozemtsevCouplings { g: 2.0, g_r: [0.0, 1.0, 0.0] };
            retry(rng, |rng| inozemtsev_residual(&sample_point(rng, s.tau), &sample_point(rng, s.tau), &s.hp, &k))
        },
    );
}

/// Runs one suite on its own sampling stream.
pub fn run_one(suite: Suite, cfg: &SuiteConfig, setup: &Setup) -> Vec<CheckRecord> {
    let mut r = Runner {
        suite,
        setup,
        rng: ChaCha8Rng::seed_from_u64(cfg.suite_seed(suite)),
        tol_override: cfg.tol_overrides.get(&suite).copied(),
        records: Vec::new(),
    };
    match suite {
        Suite::Theta => theta(&mut r),
        Suite::Ybe => ybe(&mut r),
        Suite::Commute => commute(&mut r),
        Suite::LemmaK => lemma_k(&mut r),
        Suite::Factorization => factorization(&mut r),
        Suite::Lame => lame(&mut r),
        Suite::VanDiejen => vandiejen(&mut r),
        Suite::Eigen => eigen(&mut r),
        Suite::Basis => basis(&mut r),
        Suite::Preserve => preserve(&mut r),
        Suite::DiffLimit => difflimit(&mut r),
    }
    r.records
}
