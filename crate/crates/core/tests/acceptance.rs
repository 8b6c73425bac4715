//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use velo_core::dynamics::{claim_bound, random_walk};
use velo_core::graph::gauge_transform;
use velo_core::patch::oracle_radius;
use velo_core::polytope::distance_inf;
use velo_core::rational::ratio;
use velo_core::{
    anisotropy, basic_velocities, build_plan, connectivity_report, convergence_check, convex_hull, decompose_path,
    dimensionality, empirical_velocity, enumerate_cycles, gamma_norm_oracle, gauge_norm, path_displacement,
    realize, schedule, velocity_polytope, velocity_set, GaugeFunction, Rational, RationalPolytope, RationalVec,
    TrajectoryPrefix, Verdict,
};

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn within(limit: Duration, started: Instant) -> (bool, String) {
    let t = started.elapsed();
    (t < limit, format!("{:.3} s, limit {} s", t.as_secs_f64(), limit.as_secs()))
}

fn hexagon() -> RationalPolytope {
    let h = |x: i64, y: i64| RationalVec(vec![ratio(x, 2), ratio(y, 2)]);
    convex_hull(&[h(1, 0), h(-1, 0), h(0, 1), h(0, -1), h(1, 1), h(-1, -1)]).unwrap()
}

fn honeycomb_end_to_end(seen: &mut Vec<RationalPolytope>) -> Outcome {
    let started = Instant::now();
    let g = common::honeycomb();
    let cycles = enumerate_cycles(&g, 1_000_000).map_err(|e| e.to_string())?;
    let velocities = basic_velocities(&g, 1_000_000).map_err(|e| e.to_string())?;
    let p = velocity_polytope(&g).map_err(|e| e.to_string())?;
    let (fast, timing) = within(Duration::from_secs(1), started);
    let mut expected_vel: Vec<RationalVec> = [(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1)]
        .iter()
        .map(|&(x, y)| RationalVec(vec![ratio(x, 2), ratio(y, 2)]))
        .collect();
    expected_vel.sort();
    let ok = cycles.len() == 9 && velocities == expected_vel && p == hexagon() && fast;
    seen.push(p);
    check(
        ok,
        format!("{} cycles, {} basic velocities, hexagon {} ({timing})", cycles.len(), velocities.len(), ok),
    )
}

fn loops_counterexample() -> Outcome {
    let g = common::loops();
    let p = velocity_polytope(&g).map_err(|e| e.to_string())?;
    let segment = convex_hull(&[RationalVec::from_ints(&[-2]), RationalVec::from_ints(&[2])]).unwrap();
    let report = connectivity_report(&g).map_err(|e| e.to_string())?;
    let ok = p == segment
        && report.verdict == Verdict::QuotientConnectedOnly
        && report.cycle_lattice_index == Some(BigInt::from(2));
    check(
        ok,
        format!(
            "P = [{}], verdict {}, lattice index {:?}",
            p.vertices().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", "),
            report.verdict,
            report.cycle_lattice_index.map(|i| i.to_string())
        ),
    )
}

fn unit_ball_correspondence(seen: &mut Vec<RationalPolytope>) -> Outcome {
    let started = Instant::now();
    let mut worst = String::new();
    let mut ok = true;
    let mut count = 0;
    for (name, g) in [("honeycomb", common::honeycomb()), ("square", common::square())] {
        let p = velocity_polytope(&g).map_err(|e| e.to_string())?;
        for x in [[1i64, 0], [0, 1], [1, 1], [2, 1]] {
            let exact = gauge_norm(&p, &RationalVec::from_ints(&x)).map_err(|e| e.to_string())?;
            let exact = exact.finite().ok_or("infinite gauge")?.clone();
            for n in [4u64, 8, 16] {
                let o = gamma_norm_oracle(&g, &x, n, oracle_radius(&g, &x, n)).map_err(|e| e.to_string())?;
                let gap = (&o - &exact).abs();
                count += 1;
                if gap > ratio(4, n as i64) {
                    ok = false;
                    worst = format!("; {name} x={x:?} n={n} gap {gap}");
                }
            }
        }
        seen.push(p);
    }
    let (fast, timing) = within(Duration::from_secs(30), started);
    check(ok && fast, format!("{count} comparisons with |gap| <= 4/n ({timing}){worst}"))
}

fn square_diagonal() -> Outcome {
    let g = common::square();
    let p = velocity_polytope(&g).map_err(|e| e.to_string())?;
    let lp = gauge_norm(&p, &RationalVec::from_ints(&[1, 1])).map_err(|e| e.to_string())?;
    let bfs = gamma_norm_oracle(&g, &[1, 1], 8, oracle_radius(&g, &[1, 1], 8)).map_err(|e| e.to_string())?;
    let two = Rational::from_integer(2.into());
    check(
        lp.finite() == Some(&two) && bfs == two,
        format!("gauge {lp}, oracle(n=8) {bfs}"),
    )
}

fn gauge_invariance(seen: &mut Vec<RationalPolytope>) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0005);
    for i in 0..100 {
        let dim = rng.gen_range(1..=3);
        let g = common::random_graph(&mut rng, 4, 8, dim, 2);
        let gauge = GaugeFunction::from_vec(common::random_gauge(&mut rng, &g, 3));
        let h = gauge_transform(&g, &gauge).map_err(|e| e.to_string())?;
        let a = basic_velocities(&g, 1_000_000).map_err(|e| e.to_string())?;
        let b = basic_velocities(&h, 1_000_000).map_err(|e| e.to_string())?;
        if a != b {
            return Err(format!("graph {i} differs after regauging"));
        }
        if let Ok(set) = velocity_set(&g) {
            seen.extend(set.components.into_iter().map(|c| c.polytope));
        }
    }
    Ok("100 random graphs, identical basic velocity sets".into())
}

fn strongly_connected_fixtures(rng: &mut ChaCha8Rng, count: usize) -> Vec<velo_core::DisplacementGraph> {
    let mut out = vec![common::honeycomb(), common::square()];
    while out.len() < count {
        let dim = rng.gen_range(1..=3);
        out.push(common::random_strongly_connected(rng, 5, 6, dim, 2));
    }
    out
}

fn decomposition_bounds(seen: &mut Vec<RationalPolytope>) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0006);
    let graphs = strongly_connected_fixtures(&mut rng, 20);
    for walk in 0..100u64 {
        let g = &graphs[walk as usize % graphs.len()];
        let start = rng.gen_range(0..g.vertex_count());
        let p = random_walk(g, start, 200, walk).map_err(|e| e.to_string())?;
        let dec = decompose_path(g, &p).map_err(|e| e.to_string())?;
        let in_cycles: usize = dec.cycles.iter().map(|c| c.len()).sum();
        let slack = p.len() - in_cycles;
        let mut residual = path_displacement(g, &p).map_err(|e| e.to_string())?;
        for c in &dec.cycles {
            for (r, x) in residual.iter_mut().zip(c.displacement(g)) {
                *r -= x;
            }
        }
        let norm = residual.iter().map(|x| x.abs()).max().unwrap_or(0);
        let bound = g.max_displacement_norm() * g.vertex_count() as i64;
        if slack > g.vertex_count() || norm >= bound {
            return Err(format!("walk {walk}: |p|-sum {slack}, residual {norm}, C|V| {bound}"));
        }
    }
    for g in graphs.iter().skip(2) {
        seen.push(velocity_polytope(g).map_err(|e| e.to_string())?);
    }
    Ok("100 walks of length 200 on 20 strongly connected graphs".into())
}

fn claim_bound_check() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0007);
    let graphs = strongly_connected_fixtures(&mut rng, 12);
    let mut checks = 0;
    for (i, g) in graphs.iter().enumerate() {
        let p = velocity_polytope(g).map_err(|e| e.to_string())?;
        for seed in 0..3u64 {
            let walk = random_walk(g, 0, 500, 100 * i as u64 + seed).map_err(|e| e.to_string())?;
            for n in [10usize, 50, 100, 500] {
                let prefix = TrajectoryPrefix::new(velo_core::PathRef::new(walk.edges[..n].to_vec()));
                let w = empirical_velocity(g, &prefix).map_err(|e| e.to_string())?;
                let d = distance_inf(&p, &w).map_err(|e| e.to_string())?;
                let bound = claim_bound(g, n);
                checks += 1;
                if d >= bound {
                    return Err(format!("graph {i} n={n}: distance {d} >= bound {bound}"));
                }
            }
        }
    }
    Ok(format!("{checks} prefixes strictly inside 2|V|C/n"))
}

fn scheduled_convergence() -> Outcome {
    let g = common::honeycomb();
    let cycles = enumerate_cycles(&g, 1_000_000).map_err(|e| e.to_string())?;
    let p = velocity_polytope(&g).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0008);
    let mut worst64 = Rational::zero();
    for trial in 0..20 {
        let r = rng.gen_range(1..=4);
        let chosen: Vec<_> = cycles.choose_multiple(&mut rng, r).cloned().collect();
        let raw: Vec<i64> = (0..r).map(|_| rng.gen_range(1..=10)).collect();
        let total: i64 = raw.iter().sum();
        let weighted: Vec<_> = chosen.into_iter().zip(raw.iter().map(|&w| ratio(w, total))).collect();
        let plan = build_plan(&g, &weighted).map_err(|e| e.to_string())?;
        let target = plan.target_velocity(&g);
        let error = |k: u64| -> Result<Rational, String> {
            let prefix = schedule(&plan, k).map_err(|e| e.to_string())?;
            let w = empirical_velocity(&g, &prefix).map_err(|e| e.to_string())?;
            convergence_check(&g, &prefix, &p).map_err(|e| e.to_string())?;
            Ok(w.sub(&target).inf_norm())
        };
        let (e16, e64) = (error(16)?, error(64)?);
        if e64 > ratio(1, 20) || e64.clone() * Rational::from_integer(2.into()) > e16 {
            let combo: Vec<String> = weighted.iter().map(|(c, w)| format!("{w}*{}", c.velocity(&g))).collect();
            return Err(format!(
                "trial {trial} ({}): error(16) = {e16}, error(64) = {e64}",
                combo.join(" + ")
            ));
        }
        worst64 = worst64.max(e64);
    }
    Ok(format!("20 combinations, worst error at k_max=64 is {worst64}"))
}

fn realizability(seen: &mut Vec<RationalPolytope>) -> Outcome {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0009);
    for i in 0..200 {
        let dim = rng.gen_range(1..=3);
        let count = rng.gen_range(1..=6);
        let p = convex_hull(&common::random_points(&mut rng, dim, count, 12)).map_err(|e| e.to_string())?;
        let g = realize(&p).map_err(|e| e.to_string())?;
        let q = velocity_polytope(&g).map_err(|e| e.to_string())?;
        if q != p {
            return Err(format!("polytope {i} does not round trip"));
        }
        seen.push(q);
    }
    let (fast, timing) = within(Duration::from_secs(60), started);
    check(fast, format!("200 random polytopes round trip exactly ({timing})"))
}

fn no_go(seen: &[RationalPolytope]) -> Outcome {
    let mut tested = 0;
    for p in seen {
        if p.dim() < 2 || p.is_empty() {
            continue;
        }
        let (affine, interior) = dimensionality(p).map_err(|e| e.to_string())?;
        if affine < p.dim() || !interior {
            continue;
        }
        let a = anisotropy(p, None).map_err(|e| e.to_string())?;
        tested += 1;
        if a.isotropic || a.inradius2 >= a.circumradius2 {
            return Err(format!("isotropic polytope found: {}", p.to_json()));
        }
    }
    check(tested > 0, format!("{tested} full-dimensional polytopes, all anisotropic"))
}

fn morphism_obstruction() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_velo"))
        .arg("check-morphism")
        .arg(common::fixture_path("square.dgf"))
        .arg(common::fixture_path("honeycomb.dgf"))
        .env_remove("VELO_BUDGET")
        .output()
        .map_err(|e| e.to_string())?;
    let text = String::from_utf8_lossy(&out.stdout).trim().to_string();
    check(out.status.success() && text == "morphism impossible", format!("printed \"{text}\""))
}

fn main() -> ExitCode {
    let mut seen = Vec::new();
    let mut seen_extra = Vec::new();
    let results: Vec<(usize, &str, Outcome)> = vec![
        (1, "honeycomb end-to-end", honeycomb_end_to_end(&mut seen)),
        (2, "loops counterexample", loops_counterexample()),
        (3, "unit-ball correspondence", unit_ball_correspondence(&mut seen)),
        (4, "square lattice diagonal", square_diagonal()),
        (5, "gauge invariance", gauge_invariance(&mut seen)),
        (6, "path decomposition bounds", decomposition_bounds(&mut seen)),
        (7, "prefix distance bound", claim_bound_check()),
        (8, "scheduled convergence", scheduled_convergence()),
        (9, "realizability round trip", realizability(&mut seen_extra)),
    ];
    seen.extend(seen_extra);
    let mut results = results;
    results.push((10, "no isotropic velocity polytope", no_go(&seen)));
    results.push((11, "morphism obstruction", morphism_obstruction()));

    let mut failed = 0;
    for (n, name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("acceptance {n:>2} PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("acceptance {n:>2} FAIL  {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
