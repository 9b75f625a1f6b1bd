//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use lattice_entropy::catalog;
use lattice_entropy::checker::{self, Verdict};
use lattice_entropy::entropy::{
    entropy_finite_size, entropy_logdet, ln_big, mahler_measure, tau_exact, tau_log_fourier,
    LaurentPoly2,
};
use lattice_entropy::hyperbolic::{bipyramid_volume, v_oct, v_tet};
use lattice_entropy::invariants::{nu_bar, nu_bipyramid, regular_angles, right_angled_volume};
use lattice_entropy::map::{cover, dual, is_isomorphic, medial, temperleyan, truncate, validate, MultiGraph};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)*));
        }
    };
}

const BIPYRAMID_TABLE: [(u64, f64); 18] = [
    (2, 0.0),
    (3, 2.02988),
    (4, 3.66386),
    (5, 4.98677),
    (6, 6.08965),
    (7, 7.03257),
    (8, 7.85498),
    (9, 8.58367),
    (10, 9.23755),
    (11, 9.83040),
    (12, 10.37255),
    (13, 10.87192),
    (14, 11.33474),
    (15, 11.76597),
    (20, 13.56682),
    (100, 23.67095),
    (1000, 38.13817),
    (1_000_000, 81.5409),
];

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for (n, printed) in BIPYRAMID_TABLE {
        let v = bipyramid_volume(n).map_err(|e| e.to_string())?;
        // Five printed decimals pin the value to half a unit in the last place.
        let tol = if n == 1_000_000 { 1e-4 } else { 5e-6 };
        let dev = (v - printed).abs();
        ensure!(dev <= tol, "n = {n}: computed {v:.7}, printed {printed}");
        worst = worst.max(dev);
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!("18 values, max deviation {worst:.1e}, {elapsed:?}"))
}

fn criterion_2() -> Outcome {
    let get = |n: &str| catalog::get(n).map(|e| e.map).map_err(|e| e.to_string());
    let (tri, sq, hex) = (get("triangular")?, get("square")?, get("hexagonal")?);
    let checks = [
        ("nu(triangular) = 10 v_tet", nu_bipyramid(&tri), 10.0 * v_tet()),
        ("nu(square) = 2 v_oct", nu_bipyramid(&sq), 2.0 * v_oct()),
        ("nu_bar(square) = 2 v_oct", nu_bar(&sq), 2.0 * v_oct()),
        ("2 nu(hexagonal) = 10 v_tet", 2.0 * nu_bipyramid(&hex), 10.0 * v_tet()),
    ];
    for (name, a, b) in checks {
        ensure!((a - b).abs() <= 1e-12, "{name}: {a} vs {b}");
    }
    for (map, expected) in [(&tri, 10.0 * v_tet()), (&sq, 2.0 * v_oct()), (&hex, 10.0 * v_tet())] {
        let theta = regular_angles(map).map_err(|e| e.to_string())?;
        let vol = right_angled_volume(map, &theta).map_err(|e| e.to_string())?;
        ensure!((vol - expected).abs() <= 1e-9, "right-angled volume {vol} vs {expected}");
    }
    Ok("bipyramid and right-angled volumes agree".into())
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let reports = checker::table1(1e-4);
    let elapsed = start.elapsed();
    ensure!(reports.len() == 16, "{} rows", reports.len());
    let mut problems = Vec::new();
    let (mut worst_nu, mut worst_z) = (0.0f64, 0.0f64);
    for r in &reports {
        if let Some(e) = &r.error {
            problems.push(format!("{}: {e}", r.name));
            continue;
        }
        let d = r.deviations.ok_or_else(|| format!("{}: no deviations", r.name))?;
        for (col, dev, tol) in [
            ("nu_diamond/2pi", d.nu_diamond, 1e-5),
            ("nu_bar/2pi", d.nu_bar, 1e-5),
            ("z", d.z, 2e-3),
        ] {
            if dev.abs() > tol {
                let x = r.expected.unwrap();
                problems.push(format!("row {} {} {col} off by {dev:+.5}", x.row, r.name));
            }
        }
        worst_nu = worst_nu.max(d.nu_diamond.abs());
        worst_z = worst_z.max(d.z.abs());
    }
    if elapsed > Duration::from_secs(300) {
        problems.push(format!("took {elapsed:?}"));
    }
    ensure!(problems.is_empty(), "{}", problems.join("; "));
    Ok(format!("16 rows, max |dz| {worst_z:.1e}, max |d nu| {worst_nu:.1e}, {elapsed:?}"))
}

fn criterion_4() -> Outcome {
    let entry = catalog::get("3^3-4^2").map_err(|e| e.to_string())?;
    let report = checker::check_entry(&entry, 1e-4).map_err(|e| e.to_string())?;
    let nv = report.vertices as f64;
    let two_pi_zfd = 2.0 * PI * report.z.unwrap() * nv;
    let nu_fd = nu_bipyramid(&entry.map) * nv;
    let bar_fd = nu_bar(&entry.map) * nv;
    ensure!((17.676..=17.684).contains(&two_pi_zfd), "2pi z_fd = {two_pi_zfd}");
    ensure!((nu_fd - 17.69718).abs() <= 1e-4, "nu_fd = {nu_fd}");
    ensure!((bar_fd - 18.31931).abs() <= 1e-4, "nu_bar_fd = {bar_fd}");
    let lower = report.verdict("lower").ok_or("no lower verdict")?;
    ensure!(lower.verdict == Verdict::Fails, "lower bound verdict {:?}", lower.verdict);
    let hyp = report.verdict("hyperbolic-lower").ok_or("no hyperbolic verdict")?;
    ensure!(hyp.verdict == Verdict::Holds, "hyperbolic lower verdict {:?}", hyp.verdict);
    Ok(format!(
        "17.55732 < {two_pi_zfd:.5} < {nu_fd:.5} < {bar_fd:.5}; lower bound fails, hyperbolic bound holds"
    ))
}

fn criterion_5() -> Outcome {
    let text = include_str!("../data/counterexample.poly");
    let p = LaurentPoly2::parse(text).map_err(|e| e.to_string())?;
    let m = mahler_measure(&p, 1e-5).map_err(|e| e.to_string())?;
    let map = catalog::get("3^3-4^2").map_err(|e| e.to_string())?.map;
    let z = entropy_logdet(&map, 1e-4).map_err(|e| e.to_string())?;
    let dev = (m.value - z.value).abs();
    ensure!(dev <= 2e-3, "mahler {} vs logdet {}", m.value, z.value);
    Ok(format!("m(p) = {:.6}, z_fd = {:.6}, difference {dev:.1e}", m.value, z.value))
}

fn criterion_6() -> Outcome {
    let mut worst = 0.0f64;
    for entry in catalog::all().map_err(|e| e.to_string())? {
        for n in 1..=4 {
            let exact = ln_big(&tau_exact(&cover(&entry.map, n, n)));
            let fourier = tau_log_fourier(&entry.map, n);
            let dev = (exact - fourier).abs();
            ensure!(dev <= 1e-8, "{} n = {n}: {exact} vs {fourier}", entry.name);
            worst = worst.max(dev);
        }
    }
    ensure!(tau_exact(&MultiGraph::complete(4)) == 16.into(), "tau(K4) != 16");
    ensure!(tau_exact(&MultiGraph::cycle(4)) == 4.into(), "tau(C4) != 4");
    Ok(format!("17 lattices x 4 covers, max deviation {worst:.1e}; tau(K4) = 16, tau(C4) = 4"))
}

fn criterion_7() -> Outcome {
    let sizes = [8, 16, 32, 64];
    let mut parts = Vec::new();
    for (name, z_per_vertex) in [
        ("square", v_oct() / PI),
        ("triangular", 10.0 * v_tet() / (2.0 * PI)),
        ("hexagonal", 10.0 * v_tet() / (4.0 * PI)),
    ] {
        let map = catalog::get(name).map_err(|e| e.to_string())?.map;
        let est = entropy_finite_size(&map, &sizes).map_err(|e| e.to_string())?;
        let z = est.value / map.vertex_count() as f64;
        ensure!((z - z_per_vertex).abs() <= 1e-3, "{name}: {z} vs {z_per_vertex}");
        parts.push(format!("{name} {:+.1e}", z - z_per_vertex));
    }
    Ok(parts.join(", "))
}

fn criterion_8() -> Outcome {
    let tol = 1e-4;
    let get = |n: &str| catalog::get(n).map(|e| e.map).map_err(|e| e.to_string());
    let (sq, hex) = (get("square")?, get("hexagonal")?);
    let mut reports = vec![
        checker::verify_parallel("square", &sq, 2, tol),
        checker::verify_parallel("square", &sq, 3, tol),
        checker::verify_parallel("hexagonal", &hex, 2, tol),
        checker::verify_parallel("hexagonal", &hex, 3, tol),
        checker::verify_truncate("hexagonal", &hex, tol),
        checker::verify_medial("hexagonal", &hex, tol),
    ]
    .into_iter()
    .collect::<Result<Vec<_>, _>>()
    .map_err(|e| e.to_string())?;
    let mut count = 0;
    for r in reports.drain(..) {
        for c in &r.identities {
            let dev = (c.expected - c.computed).abs();
            ensure!(dev <= 3e-3, "{}: {} off by {dev}", r.name, c.name);
            count += 1;
        }
        for v in &r.verdicts {
            ensure!(v.verdict == Verdict::Holds, "{}: {} is {:?}", r.name, v.name, v.verdict);
        }
    }
    for v in checker::proof_constants() {
        ensure!(v.verdict == Verdict::Holds, "{} is {:?}", v.name, v.verdict);
    }
    Ok(format!("{count} entropy shifts and 3 proof constants verified"))
}

fn criterion_9() -> Outcome {
    let fam = checker::medial_truncation_family(3).map_err(|e| e.to_string())?;
    for m in &fam {
        ensure!(
            (m.z_fd_closed_form - m.z_fd_composed).abs() <= 1e-12,
            "n = {}: {} vs {}",
            m.n,
            m.z_fd_closed_form,
            m.z_fd_composed
        );
        ensure!(m.medial_edges == 2 * 3usize.pow(m.n as u32 + 1), "n = {}: |E| = {}", m.n, m.medial_edges);
        ensure!(m.upper.verdict == Verdict::Holds && m.upper.margin > 0.0, "n = {}: upper bound", m.n);
    }
    let min_margin = fam.iter().map(|m| m.upper.margin).fold(f64::INFINITY, f64::min);
    Ok(format!("n = 0..3, minimum upper margin {min_margin:.5}"))
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

fn criterion_10() -> Outcome {
    let mut checks = 0;
    for entry in catalog::all().map_err(|e| e.to_string())? {
        let m = &entry.map;
        let name = entry.name;
        let err = |e: lattice_entropy::Error| format!("{name}: {e}");
        ensure!(validate(m).is_valid(), "{name}: invalid\n{}", validate(m));
        ensure!(m.euler_characteristic() == 0, "{name}: Euler characteristic");

        let d = dual(m).map_err(err)?;
        ensure!(d.euler_characteristic() == 0, "{name}: dual Euler characteristic");
        ensure!(is_isomorphic(&dual(&d).map_err(err)?, m), "{name}: dual is not an involution");

        let md = medial(m).map_err(err)?;
        let mut expected = m.vertex_degrees();
        expected.extend(m.face_degrees());
        ensure!(sorted(md.face_degrees()) == sorted(expected), "{name}: medial faces");
        ensure!(md.regular_degree() == Some(4), "{name}: medial not 4-regular");

        let t = temperleyan(m).map_err(err)?;
        let black = t.primal_vertices + t.dual_vertices;
        let white = t.map.vertex_count() - black;
        ensure!(black == white && white == m.edge_count(), "{name}: Temperleyan unbalanced");
        ensure!(t.map.face_degrees().iter().all(|&k| k == 4), "{name}: Temperleyan faces");
        ensure!(
            t.map.edges().iter().all(|&(u, v, _)| t.is_black(u) != t.is_black(v)),
            "{name}: Temperleyan not bipartite"
        );

        if m.regular_degree() == Some(3) {
            let tr = truncate(m).map_err(err)?;
            let (v, e, f) = (m.vertex_count(), m.edge_count(), m.face_count());
            ensure!(
                (tr.vertex_count(), tr.edge_count(), tr.face_count()) == (3 * v, e + 3 * v, f + v),
                "{name}: truncation counts"
            );
            let mut faces: Vec<usize> = m.face_degrees().iter().map(|k| 2 * k).collect();
            faces.extend(std::iter::repeat_n(3, v));
            ensure!(sorted(tr.face_degrees()) == sorted(faces), "{name}: truncation faces");
        }
        checks += 1;
    }
    Ok(format!("{checks} lattices"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("bipyramid volume table", criterion_1),
        ("regular lattice identities", criterion_2),
        ("lattice table reproduction", criterion_3),
        ("counterexample ordering", criterion_4),
        ("Mahler measure cross-check", criterion_5),
        ("spanning tree oracle equivalence", criterion_6),
        ("finite-size consistency", criterion_7),
        ("construction theorems", criterion_8),
        ("medial truncation family", criterion_9),
        ("structural properties", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail}", i + 1),
            Err(reason) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {reason}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
