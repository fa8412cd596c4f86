//! Floating-point concordance for the exact moment formulas: adaptive
//! Simpson quadrature (with smoothing substitutions where the raw weight
//! has fractional-power endpoints) must agree with every normalized moment
//! to 1e-8 relative error. The quadrature here is test-only scaffolding,
//! not part of the library contract.

use mathieu_core::families::{multi_indices, Family, FamilyKind};
use mathieu_core::moments::normalized_moment;
use mathieu_core::rational::{rat, rat_int, Rational};
use num_traits::ToPrimitive;

fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b))
}

fn adaptive(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    eps: f64,
    whole: f64,
    depth: u32,
    force: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let left = simpson(f, a, m);
    let right = simpson(f, m, b);
    let delta = left + right - whole;
    // the Richardson test is only trusted after a few forced levels:
    // symmetric integrands can match the coarse estimate exactly while
    // both are wrong
    if depth == 0 || (force == 0 && delta.abs() <= 15.0 * eps) {
        left + right + delta / 15.0
    } else {
        let fnext = force.saturating_sub(1);
        adaptive(f, a, m, eps / 2.0, left, depth - 1, fnext)
            + adaptive(f, m, b, eps / 2.0, right, depth - 1, fnext)
    }
}

fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, eps: f64) -> f64 {
    let f: &dyn Fn(f64) -> f64 = &f;
    // uneven panels break midpoint symmetries before adaptivity takes over
    let cuts = [0.0, 2.0 / 21.0, 5.0 / 21.0, 7.0 / 21.0, 12.0 / 21.0, 15.0 / 21.0, 17.0 / 21.0, 1.0];
    let mut total = 0.0;
    for w in cuts.windows(2) {
        let (pa, pb) = (a + (b - a) * w[0], a + (b - a) * w[1]);
        total += adaptive(f, pa, pb, eps, simpson(f, pa, pb), 24, 3);
    }
    total
}

fn to_f64(r: &Rational) -> f64 {
    r.to_f64().expect("rational fits in f64")
}

fn check(kind: &FamilyKind, gamma: &[u64], quad: f64, label: &str) {
    let exact = to_f64(&normalized_moment(kind, gamma).unwrap());
    let scale = exact.abs().max(1.0);
    assert!(
        (exact - quad).abs() <= 1e-8 * scale,
        "{label} gamma={gamma:?}: exact {exact} vs quadrature {quad}"
    );
}

#[test]
fn hermite_concordance() {
    let kind = Family::Hermite { n: 1 }.kind().unwrap();
    let mass = integrate(|x: f64| (-x * x).exp(), -13.0, 13.0, 1e-13);
    for g in 0u64..=6 {
        let quad = integrate(|x: f64| x.powi(g as i32) * (-x * x).exp(), -13.0, 13.0, 1e-13);
        check(&kind, &[g], quad / mass, "hermite");
    }
}

#[test]
fn laguerre_concordance() {
    // substitute x = t^2: the integrand t^{2a+2g+1} e^{-t^2} is smooth for
    // integer and half-integer parameters alike
    for a in [rat_int(0), rat_int(1), rat(1, 2)] {
        let kind = Family::Laguerre { alpha: vec![a.clone()] }.kind().unwrap();
        let af = to_f64(&a);
        let weight = move |t: f64, g: u64| 2.0 * t.powf(2.0 * af + 2.0 * g as f64 + 1.0) * (-t * t).exp();
        let mass = integrate(|t| weight(t, 0), 0.0, 14.0, 1e-13);
        for g in 0u64..=6 {
            let quad = integrate(|t| weight(t, g), 0.0, 14.0, 1e-13);
            check(&kind, &[g], quad / mass, "laguerre");
        }
    }
}

#[test]
fn jacobi_concordance() {
    // substitute x = sin(theta): (1-x)^a (1+x)^b dx becomes a smooth
    // integrand for the sampled integer and half-integer parameters
    for (a, b) in [
        (rat_int(0), rat_int(0)),
        (rat_int(1), rat_int(2)),
        (rat(1, 2), rat(1, 2)),
    ] {
        let kind = Family::Jacobi { alpha: vec![a.clone()], beta: vec![b.clone()] }
            .kind()
            .unwrap();
        let (af, bf) = (to_f64(&a), to_f64(&b));
        let half_pi = std::f64::consts::FRAC_PI_2;
        let weight = move |th: f64, g: u64| {
            let x = th.sin();
            (1.0 - x).powf(af) * (1.0 + x).powf(bf) * x.powi(g as i32) * th.cos()
        };
        let mass = integrate(|th| weight(th, 0), -half_pi, half_pi, 1e-13);
        for g in 0u64..=6 {
            let quad = integrate(|th| weight(th, g), -half_pi, half_pi, 1e-13);
            check(&kind, &[g], quad / mass, "jacobi");
        }
    }
}

#[test]
fn ball_concordance() {
    // polar coordinates with r = sin(phi): the radial and angular factors
    // separate exactly, each smooth for the sampled mu
    for mu in [rat_int(1), rat(3, 2)] {
        let kind = FamilyKind::Ball { n: 2, mu: mu.clone() };
        let muf = to_f64(&mu);
        let half_pi = std::f64::consts::FRAC_PI_2;
        let radial = move |total: u64| {
            integrate(
                move |phi: f64| {
                    phi.cos().powf(2.0 * muf - 1.0)
                        * phi.sin().powi(total as i32 + 1)
                        * phi.cos()
                },
                0.0,
                half_pi,
                1e-13,
            )
        };
        let angular = |g1: u64, g2: u64| {
            integrate(
                move |th: f64| th.cos().powi(g1 as i32) * th.sin().powi(g2 as i32),
                0.0,
                2.0 * std::f64::consts::PI,
                1e-13,
            )
        };
        let mass = radial(0) * angular(0, 0);
        for gamma in multi_indices(2, 6) {
            let quad = radial(gamma[0] + gamma[1]) * angular(gamma[0], gamma[1]) / mass;
            check(&kind, &gamma, quad, "ball");
        }
    }
}

#[test]
fn simplex_concordance() {
    // genuinely two-dimensional iterated quadrature over the triangle;
    // integer parameters keep the integrand polynomial
    for kappa in [
        vec![rat_int(0), rat_int(0), rat_int(0)],
        vec![rat_int(1), rat_int(1), rat_int(1)],
        vec![rat_int(2), rat_int(0), rat_int(1)],
    ] {
        let kind = FamilyKind::Simplex { kappa: kappa.clone() };
        let k: Vec<f64> = kappa.iter().map(to_f64).collect();
        let moment = |g1: u64, g2: u64| {
            let k = k.clone();
            integrate(
                move |x: f64| {
                    let k = k.clone();
                    if x >= 1.0 {
                        return 0.0;
                    }
                    integrate(
                        move |y: f64| {
                            let rest = 1.0 - x - y;
                            if rest <= 0.0 {
                                return 0.0;
                            }
                            x.powf(k[0] + g1 as f64) * y.powf(k[1] + g2 as f64) * rest.powf(k[2])
                        },
                        0.0,
                        1.0 - x,
                        1e-13,
                    )
                },
                0.0,
                1.0,
                1e-11,
            )
        };
        let mass = moment(0, 0);
        for gamma in multi_indices(2, 6) {
            let quad = moment(gamma[0], gamma[1]) / mass;
            check(&kind, &gamma, quad, "simplex");
        }
    }
}

#[test]
fn ball_second_route() {
    // independent exact route: integrate out y by substituting
    // y = sqrt(1-x^2) v, which factorizes the two-variable moment into
    // one-variable Beta ratios. With
    //   R_s(q) = int x^{2s}(1-x^2)^q dx / int (1-x^2)^q dx = (1/2)_s/(q+3/2)_s
    // the normalized moment at gamma = (2s1, 2s2) becomes
    //   R_{s2}(mu-1/2) * R_{s1}(mu+s2) * (mu+1)_{s2}/(mu+3/2)_{s2},
    // the last factor being the x-mass ratio of (1-x^2)^{mu+s2} to
    // (1-x^2)^{mu}. None of this shares code with the closed form.
    use num_traits::One;
    fn poch(c: &Rational, k: u64) -> Rational {
        let mut acc = Rational::one();
        let mut t = c.clone();
        for _ in 0..k {
            acc *= &t;
            t += Rational::one();
        }
        acc
    }
    fn even_ratio(q: &Rational, s: u64) -> Rational {
        &poch(&rat(1, 2), s) / &poch(&(q + &rat(3, 2)), s)
    }
    for mu in [rat_int(1), rat(3, 2), rat_int(3)] {
        let kind = FamilyKind::Ball { n: 2, mu: mu.clone() };
        for gamma in multi_indices(2, 6) {
            if gamma.iter().any(|&g| g % 2 == 1) {
                continue;
            }
            let (s1, s2) = (gamma[0] / 2, gamma[1] / 2);
            let inner = even_ratio(&(&mu - &rat(1, 2)), s2);
            let outer = even_ratio(&(&mu + &rat_int(s2 as i64)), s1);
            let mass = &poch(&(&mu + &Rational::one()), s2)
                / &poch(&(&mu + &rat(3, 2)), s2);
            let got = &(&inner * &outer) * &mass;
            let exact = normalized_moment(&kind, &gamma).unwrap();
            assert_eq!(got, exact, "mu={mu}, gamma={gamma:?}");
        }
    }
}
