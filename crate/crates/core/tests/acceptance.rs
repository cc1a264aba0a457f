//! End-to-end acceptance checks. Each check prints one PASS/FAIL line to
//! stderr (bypassing output capture) and the test fails if any check fails.

mod common;

use std::io::Write;
use std::time::{Duration, Instant};

use polargerm::cohomology::{
    self, disk_complex_rank, family_germ, ipa_betti_assembly, milnor_number, mu_additivity_check, DiskComplexSpec,
    RankVector,
};
use polargerm::gb::Length;
use polargerm::ideal::saturate;
use polargerm::polar::{self, GermInput, IpaVerdict, Outcome};
use polargerm::ring::{ratio, Polynomial, Ring};
use polargerm::{parse_poly, Engine, IdealPresentation, LocalOrder};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn grid() -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for a in 2..=6 {
        for b in a + 1..=6 {
            for m in 1..=4 {
                out.push((a, b, m));
            }
        }
    }
    out
}

struct Check {
    name: &'static str,
    failures: Vec<String>,
    cases: usize,
    elapsed: Duration,
    limit: Option<Duration>,
}

impl Check {
    fn run(name: &'static str, limit: Option<Duration>, body: impl FnOnce(&mut Vec<String>) -> usize) -> Check {
        let start = Instant::now();
        let mut failures = Vec::new();
        let cases = body(&mut failures);
        Check { name, failures, cases, elapsed: start.elapsed(), limit }
    }

    fn passed(&self) -> bool {
        self.failures.is_empty() && self.limit.is_none_or(|l| self.elapsed <= l)
    }

    fn report(&self) {
        let mut err = std::io::stderr().lock();
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let budget = self.limit.map(|l| format!(", limit {}s", l.as_secs())).unwrap_or_default();
        let _ = writeln!(err, "[{verdict}] {} ({} cases, {:.2?}{budget})", self.name, self.cases, self.elapsed);
        for f in self.failures.iter().take(5) {
            let _ = writeln!(err, "       {f}");
        }
    }
}

fn family_gamma(e: &Engine) -> Check {
    Check::run("family gamma equals (m-1)(b-a)", Some(Duration::from_secs(120)), |fails| {
        for (a, b, m) in grid() {
            let germ = family_germ(a, b, m).unwrap();
            let gamma = polar::gamma_number(&germ, e).unwrap();
            let want = Length::Finite(u64::from((m - 1) * (b - a)));
            if gamma != want {
                fails.push(format!("(a,b,m)=({a},{b},{m}): gamma {gamma}, expected {want}"));
            }
        }
        grid().len()
    })
}

fn family_polar_ideal(e: &Engine) -> Check {
    Check::run("family polar ideal equals (b x^(b-a) + a(s^m - t), y, s^(m-1))", None, |fails| {
        for (a, b, m) in grid() {
            let germ = family_germ(a, b, m).unwrap();
            let ring = germ.ring().clone();
            let polar = polar::relative_polar_ideal(&germ, e).unwrap();
            let reduced = e.basis(&polar).unwrap();
            let gens: Vec<Polynomial> =
                [format!("{b}*x^{} + {a}*(s^{m} - t)", b - a), "y".into(), format!("s^{}", m - 1)]
                    .iter()
                    .map(|s| parse_poly(s, &ring).unwrap())
                    .collect();
            let expected = IdealPresentation::new(&ring, gens).unwrap();
            let expected_sb = e.basis(&expected).unwrap();
            let forward = expected.generators().iter().all(|g| reduced.normal_form(g, &e.budget).unwrap().is_zero());
            let backward =
                reduced.generators().iter().all(|g| expected_sb.normal_form(g, &e.budget).unwrap().is_zero());
            if !(forward && backward) {
                fails.push(format!("(a,b,m)=({a},{b},{m}): polar basis {:?}", reduced.generators()));
            }
        }
        grid().len()
    })
}

/// Order of vanishing of `f` along `x = u, t = (b/a) u^(b-a), y = s = 0`.
fn pullback_order(germ: &GermInput, a: u32, b: u32) -> u32 {
    let u_ring = Ring::new(&["u"], None).unwrap();
    let u = Polynomial::var(&u_ring, "u").unwrap();
    let zero = Polynomial::zero(&u_ring);
    let t_image = u.pow(b - a).scale(&ratio(i64::from(b), i64::from(a)));
    let images = vec![t_image, u, zero.clone(), zero];
    germ.f().substitute(&images).unwrap().order().expect("pullback is not identically zero")
}

fn family_tau(e: &Engine) -> Check {
    Check::run("family tau equals the curve-pullback value", None, |fails| {
        for (a, b, m) in grid() {
            let germ = family_germ(a, b, m).unwrap();
            let want = Length::Finite(u64::from(pullback_order(&germ, a, b) * (m - 1)));
            let tau = polar::tau_number(&germ, e).unwrap();
            if tau != want {
                fails.push(format!("(a,b,m)=({a},{b},{m}): tau {tau}, oracle {want}"));
            }
        }
        grid().len()
    })
}

fn transversal_mu(germ: &GermInput, s: i64, e: &Engine) -> u64 {
    let g = germ.f().evaluate_var("s", &ratio(s, 1)).unwrap().evaluate_var("t", &ratio(1, 1)).unwrap();
    milnor_number(&g, &["x", "y"], e).unwrap().finite().unwrap()
}

fn disk_hyper(germ: &GermInput, m: u32, e: &Engine) -> Result<RankVector, String> {
    let spec = DiskComplexSpec {
        generic_stalk: RankVector::concentrated(1, transversal_mu(germ, 0, e)),
        special_points: vec![RankVector::concentrated(2, 1); m as usize],
        concentration_degree: Some(2),
    };
    disk_complex_rank(&spec).map_err(|err| err.to_string())
}

fn disk_euler(e: &Engine) -> Check {
    Check::run("disk hypercohomology rank (m-1)a+1 in degree 2", None, |fails| {
        for (a, b, m) in grid() {
            let germ = family_germ(a, b, m).unwrap();
            let want = RankVector::concentrated(2, u64::from((m - 1) * a + 1));
            match disk_hyper(&germ, m, e) {
                Ok(h) if h == want => {}
                other => fails.push(format!("(a,b,m)=({a},{b},{m}): {other:?}, expected {want}")),
            }
        }
        grid().len()
    })
}

fn betti_assembly(e: &Engine) -> Check {
    Check::run("assembled H^2 rank (m-1)b+1, rank 1 at m=1", None, |fails| {
        for (a, b, m) in grid() {
            let germ = family_germ(a, b, m).unwrap();
            let hyper = disk_hyper(&germ, m, e).unwrap();
            let betti = ipa_betti_assembly(&germ, &hyper, e).unwrap();
            let want = RankVector::concentrated(2, u64::from((m - 1) * b + 1));
            if betti != want || (m == 1 && betti.get(2) != 1) {
                fails.push(format!("(a,b,m)=({a},{b},{m}): {betti}, expected {want}"));
            }
            let report = cohomology::family_report(a, b, m, e).unwrap();
            if !report.all_passed() {
                let bad: Vec<&str> = report.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
                fails.push(format!("(a,b,m)=({a},{b},{m}): family report failed {bad:?}"));
            }
        }
        grid().len()
    })
}

fn random_milnor(e: &Engine) -> Check {
    Check::run(
        "Milnor number equals the linear-algebra oracle on random polynomials",
        Some(Duration::from_secs(60)),
        |fails| {
            let mut rng = ChaCha8Rng::seed_from_u64(2024);
            let names = ["x", "y", "z"];
            let mut checked = 0;
            let mut attempts = 0;
            while checked < 60 && attempts < 2000 {
                attempts += 1;
                let n = rng.gen_range(1..=3);
                let ring = Ring::new(&names[..n], None).unwrap();
                let f = if rng.gen_bool(0.5) {
                    let terms = rng.gen_range(1..=5);
                    common::random_poly(&mut rng, &ring, terms, 2, 5)
                } else {
                    let mut f = common::random_poly(&mut rng, &ring, 2, 3, 5);
                    for v in &names[..n] {
                        let k = rng.gen_range(2..=5);
                        f = &f + &Polynomial::var(&ring, v).unwrap().pow(k);
                    }
                    f
                };
                let Length::Finite(mu) = milnor_number(&f, &names[..n], e).unwrap() else { continue };
                checked += 1;
                match common::milnor_oracle(&f, 40) {
                    Some(o) if o == mu => {}
                    other => fails.push(format!("{f}: engine {mu}, oracle {other:?}")),
                }
            }
            if checked < 50 {
                fails.push(format!("only {checked} isolated samples generated"));
            }
            checked
        },
    )
}

fn additivity(e: &Engine) -> Check {
    Check::run("mu additivity on the cusp unfolding and the nodal family", None, |fails| {
        for (src, sum) in [("y^2 - x^3 + t*x", 0u64), ("y^2 + x^2*(x - t)", 1)] {
            let germ = GermInput::parse(&["t", "x", "y"], "t", src).unwrap();
            let out = mu_additivity_check(&germ, sum, e).unwrap();
            let mu_oracle = common::milnor_oracle(&germ.restriction().unwrap(), 30);
            let polar = polar::relative_polar_ideal(&germ, e).unwrap();
            let slice = polar.with(&[germ.parameter()]).unwrap();
            let gamma_oracle = common::local_length_oracle(slice.generators(), 30);
            if !out.pass
                || mu_oracle != Some(out.mu_f0)
                || gamma_oracle != Some(out.gamma)
                || mu_oracle != gamma_oracle.map(|g| g + sum)
            {
                fails.push(format!("{src}: {out:?}, oracle mu {mu_oracle:?}, oracle gamma {gamma_oracle:?}"));
            }
        }
        2
    })
}

fn ipa_classification(e: &Engine) -> Check {
    Check::run("IPA classification of family, additivity germs, fold and t-independent germs", None, |fails| {
        let mut cases = 0;
        let mut expect = |germ: GermInput, ok: &dyn Fn(IpaVerdict, Option<bool>) -> bool, label: String| {
            cases += 1;
            let verdict = polar::is_ipa(&germ, e).unwrap().verdict;
            let null = verdict.is_ipa().then(|| polar::is_null_ipa(&germ, e).unwrap());
            if !ok(verdict, null) {
                fails.push(format!("{label}: verdict {verdict}, null {null:?}"));
            }
        };
        for (a, b, m) in grid() {
            expect(family_germ(a, b, m).unwrap(), &|v, _| v.is_ipa(), format!("family ({a},{b},{m})"));
        }
        for src in ["y^2 - x^3 + t*x", "y^2 + x^2*(x - t)"] {
            expect(GermInput::parse(&["t", "x", "y"], "t", src).unwrap(), &|v, _| v.is_ipa(), src.into());
        }
        expect(
            GermInput::parse(&["t", "x", "y"], "t", "y^2 - t*x^2").unwrap(),
            &|v, _| v == IpaVerdict::No,
            "y^2 - t*x^2".into(),
        );
        for g in common::corpus().into_iter().filter(|g| g.t_independent) {
            let germ = GermInput::parse(g.vars, "t", g.f).unwrap();
            expect(germ, &|v, null| v == IpaVerdict::Yes && null == Some(true), g.f.into());
        }
        cases
    })
}

fn property_suite(e: &Engine) -> Check {
    Check::run(
        "polar-set properties, saturation idempotence, order independence, unimodular invariance",
        None,
        |fails| {
            let other = Engine { local_order: LocalOrder::NegDegrevlexReversed, ..e.clone() };
            let mut germs: Vec<(String, GermInput)> = common::corpus()
                .into_iter()
                .map(|g| (g.f.to_string(), GermInput::parse(g.vars, "t", g.f).unwrap()))
                .collect();
            for (a, b, m) in grid() {
                germs.push((format!("family ({a},{b},{m})"), family_germ(a, b, m).unwrap()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            for (label, germ) in &germs {
                for d in polar::polar_consistency_check(germ, e).unwrap() {
                    if d.outcome == Outcome::Fail {
                        fails.push(format!("{label}: {} failed: {}", d.name, d.detail));
                    }
                }
                let (gamma, tau) = (polar::gamma_number(germ, e).unwrap(), polar::tau_number(germ, e).unwrap());
                if gamma.is_finite() != tau.is_finite() {
                    fails.push(format!("{label}: gamma {gamma} but tau {tau}"));
                }
                let dt = germ.dt();
                if !dt.is_zero() {
                    let polar = polar::relative_polar(germ, e).unwrap();
                    let again = saturate(&polar.ideal, &dt, e).unwrap();
                    if again.steps != 0 || !e.same_ideal(&again.ideal, &polar.ideal).unwrap() {
                        fails.push(format!("{label}: saturation not idempotent"));
                    }
                }
                let (gamma2, tau2) =
                    (polar::gamma_number(germ, &other).unwrap(), polar::tau_number(germ, &other).unwrap());
                if (gamma, tau) != (gamma2, tau2) {
                    fails.push(format!("{label}: orders disagree, ({gamma}, {tau}) vs ({gamma2}, {tau2})"));
                }
                let f0 = germ.restriction().unwrap();
                let vars = germ.slice_variables();
                let mu = milnor_number(&f0, &vars, e).unwrap();
                if milnor_number(&f0, &vars, &other).unwrap() != mu {
                    fails.push(format!("{label}: mu(f_0) depends on the order"));
                }
                for _ in 0..5 {
                    let a = common::unimodular(&mut rng, vars.len());
                    let moved = common::linear_change(&f0, &a);
                    let mu2 = milnor_number(&moved, &vars, e).unwrap();
                    if mu2 != mu {
                        fails.push(format!("{label}: mu {mu} became {mu2} under {a:?}"));
                    }
                }
            }
            germs.len()
        },
    )
}

#[test]
fn acceptance_suite() {
    let e = Engine::default();
    let checks = [
        family_gamma(&e),
        family_polar_ideal(&e),
        family_tau(&e),
        disk_euler(&e),
        betti_assembly(&e),
        random_milnor(&e),
        additivity(&e),
        ipa_classification(&e),
        property_suite(&e),
    ];
    for c in &checks {
        c.report();
    }
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed()).map(|c| c.name).collect();
    assert!(failed.is_empty(), "failed checks: {failed:?}");
}
