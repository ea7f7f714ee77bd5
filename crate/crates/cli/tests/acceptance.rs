//! Acceptance criteria, one test each. Run with `-- --nocapture` to see the
//! `[PASS]`/`[FAIL]` lines.

use std::f64::consts::{PI, TAU};
use std::process::Command;

use newton_holo::{
    builtin, contour_integral, divided_difference_distinct, divided_difference_integral, divided_difference_recursive,
    eval_expansion, eval_fn, expand_annulus, expand_disc, lemma1_partial, parse_function, partial_fraction_lhs,
    reciprocal_expansion_converges, AnnulusSpec, Builtin, ComplexValue, Contour, HolomorphicFn, NodeSequence,
    QuadConfig, QuadError,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> ComplexValue {
    ComplexValue::new(re, im)
}

fn r(x: f64) -> ComplexValue {
    c(x, 0.0)
}

fn report(id: &str, what: &str, pass: bool, detail: String) {
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("[{tag}] {id} {what}: {detail}");
    assert!(pass, "{id} {what}: {detail}");
}

fn rel(a: ComplexValue, b: ComplexValue, floor: f64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(floor)
}

fn vec_rel(a: &[ComplexValue], b: &[ComplexValue]) -> f64 {
    assert_eq!(a.len(), b.len());
    let scale = a.iter().chain(b).map(|z| z.norm()).fold(0.0, f64::max);
    let diff = a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    diff / scale
}

fn in_disc(rng: &mut ChaCha8Rng, radius: f64) -> ComplexValue {
    ComplexValue::from_polar(radius * rng.gen::<f64>().sqrt(), TAU * rng.gen::<f64>())
}

fn in_annulus(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> ComplexValue {
    let r2 = lo * lo + rng.gen::<f64>() * (hi * hi - lo * lo);
    ComplexValue::from_polar(r2.sqrt(), TAU * rng.gen::<f64>())
}

fn distinct_nodes(rng: &mut ChaCha8Rng, count: usize, radius: f64, sep: f64) -> Vec<ComplexValue> {
    let mut pts: Vec<ComplexValue> = Vec::new();
    while pts.len() < count {
        let z = in_disc(rng, radius);
        if pts.iter().all(|p| (p - z).norm() >= sep) {
            pts.push(z);
        }
    }
    pts
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn origin_circle(radius: f64) -> Contour {
    Contour::circle(r(0.0), radius).unwrap()
}

#[test]
fn c1_telescoping_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let k = rng.gen_range(0..=20);
        let lambdas: Vec<_> = (0..=k).map(|_| in_annulus(&mut rng, 0.5, 2.0)).collect();
        let x = loop {
            let x = in_disc(&mut rng, 1.0);
            if x != r(0.0) {
                break x;
            }
        };
        let split = lemma1_partial(&lambdas, x).unwrap();
        let inv = 1.0 / x;
        worst = worst.max((split.partial_sum + split.remainder - inv).norm() / inv.norm());
    }
    report(
        "C1",
        "telescoping identity, 1000 trials",
        worst < 1e-13,
        format!("max relative deviation {worst:.3e} (< 1e-13)"),
    );
}

#[test]
fn c2_reciprocal_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let xi = ComplexValue::from_polar(2.0, TAU * rng.gen::<f64>());
    let nodes = NodeSequence::geometric(r(0.0), ComplexValue::from_polar(0.3, 1.1), r(0.5)).unwrap();
    let lambdas: Vec<_> = nodes.take(40).iter().map(|cn| xi - cn).collect();
    let mut worst: f64 = 0.0;
    let mut admissible = true;
    for _ in 0..50 {
        let z = in_disc(&mut rng, 0.5);
        let x = xi - z;
        admissible &= reciprocal_expansion_converges(&lambdas, x, 0.5, 0).unwrap();
        let split = lemma1_partial(&lambdas, x).unwrap();
        worst = worst.max(rel(split.partial_sum, 1.0 / x, 0.0));
    }
    report(
        "C2",
        "40-term reciprocal series at 50 points",
        admissible && worst < 1e-10,
        format!("ratio condition holds: {admissible}; max relative error {worst:.3e} (< 1e-10)"),
    );
}

fn route_catalog() -> Vec<HolomorphicFn> {
    vec![
        builtin("exp").unwrap(),
        builtin("sin").unwrap(),
        parse_function("z^5 + 2*z - 1").unwrap(),
        parse_function("1/(z-3)").unwrap(),
    ]
}

#[test]
fn c3_route_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let contour = origin_circle(2.0);
    let cfg = QuadConfig::default();
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let count = rng.gen_range(1..=7);
        let nodes = distinct_nodes(&mut rng, count, 1.0, 0.2);
        for f in route_catalog() {
            let a = divided_difference_integral(&f, &contour, &nodes, &cfg).unwrap().value;
            let b = divided_difference_recursive(&f, &nodes, &contour, &cfg).unwrap();
            let d = divided_difference_distinct(&f, &nodes).unwrap();
            // Δ⁶ of the quintic is exactly zero: fall back to the scale of the sampled values
            let floor = 1e-3
                * nodes
                    .iter()
                    .map(|&z| eval_fn(&f, z).unwrap().norm())
                    .fold(0.0, f64::max);
            worst = worst.max(rel(a, b, floor)).max(rel(a, d, floor)).max(rel(b, d, floor));
        }
    }
    report(
        "C3",
        "integral vs recursive vs distinct, n <= 6",
        worst < 1e-9,
        format!("max relative spread {worst:.3e} (< 1e-9)"),
    );
}

#[test]
fn c4_property_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let contour = origin_circle(2.0);
    let cfg = QuadConfig::default();
    let integral = |f: &HolomorphicFn, nodes: &[ComplexValue]| {
        divided_difference_integral(f, &contour, nodes, &cfg).unwrap().value
    };
    let exp = builtin("exp").unwrap();

    let mut perm: f64 = 0.0;
    for _ in 0..50 {
        let count = rng.gen_range(2..=7);
        let nodes = distinct_nodes(&mut rng, count, 1.0, 0.2);
        let base = divided_difference_distinct(&exp, &nodes).unwrap();
        for _ in 0..20 {
            let mut shuffled = nodes.clone();
            shuffled.shuffle(&mut rng);
            perm = perm.max(rel(divided_difference_distinct(&exp, &shuffled).unwrap(), base, 0.0));
        }
    }

    let mut lin: f64 = 0.0;
    let g = parse_function("1/(z-3)").unwrap();
    for _ in 0..50 {
        let count = rng.gen_range(1..=7);
        let nodes = distinct_nodes(&mut rng, count, 1.0, 0.2);
        let (alpha, beta) = (in_disc(&mut rng, 2.0), in_disc(&mut rng, 2.0));
        let combo = HolomorphicFn::from_closure("alpha*exp + beta/(z-3)", vec![r(3.0)], move |z| {
            alpha * z.exp() + beta / (z - 3.0)
        });
        let (fe, ge) = (integral(&exp, &nodes), integral(&g, &nodes));
        let scale = (alpha * fe).norm().max((beta * ge).norm());
        lin = lin.max(rel(integral(&combo, &nodes), alpha * fe + beta * ge, scale));
    }

    let mut conf: f64 = 0.0;
    for _ in 0..50 {
        let center = in_disc(&mut rng, 1.0);
        let n = rng.gen_range(0..=8);
        conf = conf.max(rel(
            integral(&exp, &vec![center; n + 1]),
            center.exp() / factorial(n),
            0.0,
        ));
        let coeffs: Vec<_> = (0..rng.gen_range(1..=7)).map(|_| in_disc(&mut rng, 1.0)).collect();
        let p = HolomorphicFn::from_builtin(Builtin::Poly(coeffs.clone()));
        // p⁽ⁿ⁾(c)/n! = Σ_{k≥n} C(k,n) a_k c^{k−n}
        let expected: ComplexValue = coeffs
            .iter()
            .enumerate()
            .skip(n)
            .map(|(k, a)| a * (factorial(k) / (factorial(n) * factorial(k - n))) * center.powi((k - n) as i32))
            .sum();
        let scale = coeffs.iter().map(|a| a.norm()).fold(0.0, f64::max);
        conf = conf.max(rel(integral(&p, &vec![center; n + 1]), expected, scale));
    }

    let mut nest: f64 = 0.0;
    let f = parse_function("exp(z)/(z-3)").unwrap();
    for _ in 0..30 {
        let n = rng.gen_range(1..=4);
        let nodes = distinct_nodes(&mut rng, n + 1, 1.0, 0.2);
        for k in 0..n {
            let head = nodes[..n - k].to_vec();
            let inner = f.clone();
            let g = HolomorphicFn::from_closure("inner divided difference", vec![], move |w| {
                let mut pts = head.clone();
                pts.push(w);
                divided_difference_integral(&inner, &origin_circle(2.0), &pts, &QuadConfig::default())
                    .unwrap()
                    .value
            });
            let outer = divided_difference_distinct(&g, &nodes[n - k..]).unwrap();
            nest = nest.max(rel(outer, integral(&f, &nodes), 0.0));
        }
    }

    let mut lead: f64 = 0.0;
    for _ in 0..100 {
        let n = rng.gen_range(0..=6);
        let nodes = distinct_nodes(&mut rng, n + 1, 1.0, 0.2);
        let a: Vec<_> = (0..=n).map(|_| in_disc(&mut rng, 1.0)).collect();
        let g: Vec<_> = (0..rng.gen_range(1..=4)).map(|_| in_disc(&mut rng, 1.0)).collect();
        let (cs, ca) = (nodes.clone(), a.clone());
        let constructed = HolomorphicFn::from_closure("constructed", vec![], move |z| {
            let mut value = r(0.0);
            let mut prod = r(1.0);
            for (j, cj) in cs.iter().enumerate() {
                value += ca[j] * prod;
                prod *= z - cj;
            }
            value + g.iter().rev().fold(r(0.0), |acc, co| acc * z + co) * prod
        });
        lead = lead.max(rel(integral(&constructed, &nodes), a[n], 1.0));
    }

    let mut pf: f64 = 0.0;
    for _ in 0..200 {
        let s = rng.gen_range(1..=8);
        let a: Vec<_> = loop {
            let a = distinct_nodes(&mut rng, s, 2.0, 0.1);
            if a.iter().all(|z| z.norm() >= 0.1) {
                break a;
            }
        };
        let rhs = 1.0 / a.iter().product::<ComplexValue>();
        pf = pf.max(rel(partial_fraction_lhs(&a).unwrap(), rhs, 0.0));
    }

    let pass = perm < 1e-12 && lin < 1e-12 && conf < 1e-10 && nest < 1e-9 && lead < 1e-10 && pf < 1e-11;
    report(
        "C4",
        "divided-difference properties",
        pass,
        format!(
            "permutation {perm:.2e} (<1e-12), linearity {lin:.2e} (<1e-12), confluent {conf:.2e} (<1e-10), \
             nesting {nest:.2e} (<1e-9), leading coefficient {lead:.2e} (<1e-10), partial fraction {pf:.2e} (<1e-11)"
        ),
    );
}

#[test]
fn c5_disc_reconstruction() {
    let cfg = QuadConfig::default();
    let f = builtin("exp").unwrap();
    let nodes = NodeSequence::geometric(r(0.0), r(1.0), r(0.5)).unwrap();
    let e = expand_disc(&f, &origin_circle(1.0), &nodes, 25, &cfg).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let z = in_disc(&mut rng, 1.0);
        worst = worst.max((eval_expansion(&e, z, 25, 0).unwrap() - z.exp()).norm());
    }
    let a = expand_disc(&f, &origin_circle(0.9), &nodes, 25, &cfg).unwrap();
    let b = expand_disc(&f, &origin_circle(0.99), &nodes, 25, &cfg).unwrap();
    let unique = vec_rel(a.regular_coeffs(), b.regular_coeffs());
    report(
        "C5",
        "exp on the unit disc, c_n = 2^-n, N = 25",
        worst < 1e-10 && unique < 1e-10,
        format!("max error {worst:.3e} (< 1e-10); radii 0.9 vs 0.99 coefficient spread {unique:.3e} (< 1e-10)"),
    );
}

#[test]
fn c6_annulus_reconstruction() {
    let cfg = QuadConfig::default();
    let f = parse_function("1/(z*(z-3))")
        .unwrap()
        .with_singularities([r(0.0), r(3.0)]);
    let spec = AnnulusSpec::concentric(r(0.0), 0.5, 2.0).unwrap();
    let c_nodes = NodeSequence::geometric(r(1.0), r(1.0), r(0.5)).unwrap();
    let d_nodes = NodeSequence::geometric(r(0.0), r(0.1), r(0.5)).unwrap();
    let e = expand_annulus(&f, &spec, &c_nodes, &d_nodes, 25, 25, &cfg).unwrap();
    let mut worst: f64 = 0.0;
    let mut worst_at = r(0.0);
    for k in 0..50 {
        let z = ComplexValue::from_polar(1.0, 2.0 * PI * k as f64 / 50.0);
        let err = (eval_expansion(&e, z, 25, 25).unwrap() - eval_fn(&f, z).unwrap()).norm();
        if err > worst {
            worst = err;
            worst_at = z;
        }
    }
    // residue oracle: only the pole at 3 lies outside Γ₂, only the pole at 0 inside Γ₁
    let cs = c_nodes.take(26);
    let regular: Vec<_> = (0..=25)
        .map(|n| -(1.0 / 3.0) / cs[..=n].iter().map(|ck| 3.0 - ck).product::<ComplexValue>())
        .collect();
    let ds = d_nodes.take(25);
    let principal: Vec<_> = (1..=25)
        .map(|n| -(1.0 / 3.0) * ds[..n - 1].iter().map(|dk| -dk).product::<ComplexValue>())
        .collect();
    let coeffs = vec_rel(e.regular_coeffs(), &regular).max(vec_rel(e.principal_coeffs(), &principal));
    report(
        "C6",
        "1/(z(z-3)) on 0.5 < |z| < 2, c_n = 1 + 2^-n, N = M = 25",
        worst < 1e-8,
        format!("max error {worst:.3e} at z = {worst_at:.3} (< 1e-8); coefficients vs residue oracle {coeffs:.3e}"),
    );
}

#[test]
fn c7_degenerations() {
    let cfg = QuadConfig::default();
    let mut taylor: f64 = 0.0;
    for center in [r(0.0), c(0.2, -0.1)] {
        let nodes = NodeSequence::constant(center).unwrap();
        let disc = Contour::circle(center, 1.0).unwrap();
        let e = expand_disc(&builtin("exp").unwrap(), &disc, &nodes, 20, &cfg).unwrap();
        let expected: Vec<_> = (0..=20).map(|n| center.exp() / factorial(n)).collect();
        taylor = taylor.max(vec_rel(e.regular_coeffs(), &expected));
        // sin⁽ⁿ⁾(c) cycles through sin, cos, −sin, −cos
        let e = expand_disc(&builtin("sin").unwrap(), &disc, &nodes, 20, &cfg).unwrap();
        let derivs = [center.sin(), center.cos(), -center.sin(), -center.cos()];
        let expected: Vec<_> = (0..=20).map(|n| derivs[n % 4] / factorial(n)).collect();
        taylor = taylor.max(vec_rel(e.regular_coeffs(), &expected));
    }

    let spec = AnnulusSpec::concentric(r(0.0), 0.5, 2.0).unwrap();
    let zero = NodeSequence::constant(r(0.0)).unwrap();
    let mut laurent: f64 = 0.0;
    let cases: [(HolomorphicFn, Vec<ComplexValue>, Vec<ComplexValue>); 2] = [
        (builtin("recip").unwrap(), vec![r(0.0); 11], {
            let mut p = vec![r(0.0); 10];
            p[0] = r(1.0);
            p
        }),
        (
            parse_function("1/(z^2) + z").unwrap(),
            {
                let mut a = vec![r(0.0); 11];
                a[1] = r(1.0);
                a
            },
            {
                let mut p = vec![r(0.0); 10];
                p[1] = r(1.0);
                p
            },
        ),
    ];
    for (f, regular, principal) in &cases {
        let e = expand_annulus(f, &spec, &zero, &zero, 10, 10, &cfg).unwrap();
        let mut got: Vec<_> = e.principal_coeffs().to_vec();
        got.extend_from_slice(e.regular_coeffs());
        let mut want = principal.clone();
        want.extend_from_slice(regular);
        laurent = laurent.max(vec_rel(&got, &want));
    }
    report(
        "C7",
        "constant nodes give Taylor and Laurent coefficients",
        taylor < 1e-11 && laurent < 1e-10,
        format!("Taylor {taylor:.3e} (< 1e-11), Laurent of 1/z and 1/z^2 + z {laurent:.3e} (< 1e-10)"),
    );
}

#[test]
fn c8_quadrature_sanity() {
    let cfg = QuadConfig::default();
    let circles = [
        (r(0.0), 1.0),
        (r(0.0), 0.3),
        (c(0.4, -0.2), 0.9),
        (c(0.8, 0.5), 0.5),
        (c(-0.6, 0.1), 1.2),
    ];
    let mut residue: f64 = 0.0;
    let mut anti: f64 = 0.0;
    for (center, radius) in circles {
        let contour = Contour::circle(center, radius).unwrap();
        let zero_inside = center.norm() < radius;
        for m in -1..=8 {
            let g = |xi: ComplexValue| Ok::<_, QuadError>(xi.powi(m));
            let pos = contour_integral(g, &contour, &cfg).unwrap().value;
            let neg = contour_integral(g, &contour.reversed(), &cfg).unwrap().value;
            let expected = if m == -1 && zero_inside { c(0.0, TAU) } else { r(0.0) };
            residue = residue.max((pos - expected).norm());
            if pos.norm() > 0.0 {
                anti = anti.max((pos + neg).norm() / pos.norm());
            }
        }
    }
    report(
        "C8",
        "powers of xi on circles, m = -1..8",
        residue < 1e-12 && anti < 1e-15,
        format!("max residue error {residue:.3e} (< 1e-12 absolute); orientation antisymmetry {anti:.3e} (< 1e-15)"),
    );
}

fn run(args: &[&str], dir: &std::path::Path) -> (Vec<u8>, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_newton-holo"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs");
    (out.stdout, out.status.code().unwrap_or(-1))
}

#[test]
fn c9_cli_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let expand = |out: &str| {
        run(
            &[
                "expand",
                "--fn",
                "exp(z)/(z*(z-3))",
                "--annulus",
                "0,0.5,2",
                "--cnodes",
                "geom:0,0.5,0.5",
                "--dnodes",
                "geom:0,0.1,0.5",
                "--N",
                "20",
                "--M",
                "20",
                "--out",
                out,
            ],
            dir.path(),
        )
    };
    let (stdout_a, code_a) = expand("a.json");
    let (stdout_b, code_b) = expand("b.json");
    let json_a = std::fs::read(dir.path().join("a.json")).unwrap();
    let json_b = std::fs::read(dir.path().join("b.json")).unwrap();
    let verify = || run(&["verify", "routes", "--seed", "7", "--trials", "50"], dir.path());
    let (verify_a, va) = verify();
    let (verify_b, vb) = verify();
    let pass = code_a == 0
        && code_b == 0
        && va == 0
        && vb == 0
        && stdout_a == stdout_b
        && json_a == json_b
        && verify_a == verify_b;
    report(
        "C9",
        "repeated expand and verify --seed 7",
        pass,
        format!(
            "exit codes {code_a}/{code_b}/{va}/{vb}; expand stdout identical {}, JSON identical {}, verify identical {}",
            stdout_a == stdout_b,
            json_a == json_b,
            verify_a == verify_b
        ),
    );
}
