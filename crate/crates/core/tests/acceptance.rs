mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;

use atcert::at_core::{
    at_number, coeff, diff_coeff, diff_enum, Arc, DegreeBudget, Orientation, OutDegreeVector,
};
use atcert::at_planar::{thm_main_at, Certificate, TraceStep};
use atcert::verify::{check_certificate, sampled_choosability_check};
use atcert::witness_ops::{remove_edge_keep_at, union_one_way, WitnessedGraph};
use atcert::{at4_matching_certificate, at5_certificate, Edge, Graph, PlaneGraph};

use common::{corpus, random_graph, random_orientation, rng};

type Outcome = Result<String, String>;

struct Report {
    failures: usize,
}

impl Report {
    fn run(&mut self, id: u32, name: &str, limit: Duration, f: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let out = f();
        let took = start.elapsed();
        let (ok, detail) = match out {
            Ok(d) if took <= limit => (true, d),
            Ok(d) => (false, format!("{d}; over the {:.0}s limit", limit.as_secs_f64())),
            Err(e) => (false, e),
        };
        if !ok {
            self.failures += 1;
        }
        println!(
            "{} criterion {id}: {name} ({:.2}s) {detail}",
            if ok { "PASS" } else { "FAIL" },
            took.as_secs_f64()
        );
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn base_case() -> Outcome {
    let t = PlaneGraph::from_faces(&[vec![1, 2, 3], vec![1, 3, 2]], 1).map_err(|e| e.to_string())?;
    let (w, _) = thm_main_at(&t, 1, 2).map_err(|e| e.to_string())?;
    let d: Vec<u32> = w.witness().out_degrees().values().collect();
    ensure(d == vec![0, 0, 2], || format!("out-degrees {d:?}"))?;
    ensure(w.diff() == 1, || format!("diff {}", w.diff()))?;
    Ok("out-degrees (0,0,2), diff 1".into())
}

fn without_matching(g: &PlaneGraph, c: &Certificate) -> Graph {
    g.graph().without_edges(&c.matching).unwrap()
}

fn corpus_certificates(
    corpus: &[(String, PlaneGraph)],
    at4: bool,
    out: &mut Vec<(String, PlaneGraph, Certificate)>,
) -> Outcome {
    let bound = if at4 { 3 } else { 4 };
    for (name, g) in corpus {
        let c = if at4 { at4_matching_certificate(g) } else { at5_certificate(g) }
            .map_err(|e| format!("{name}: {e}"))?;
        let v = check_certificate(&c, g);
        ensure(v.pass, || format!("{name}: verdict {}", v.to_json()))?;
        let o = c.orientation_on(&without_matching(g, &c)).map_err(|e| e.to_string())?;
        ensure(o.max_out_degree() <= bound, || format!("{name}: max out-degree {}", o.max_out_degree()))?;
        ensure(c.diff != 0, || format!("{name}: diff 0"))?;
        if at4 {
            let e1 = c.e1.ok_or_else(|| format!("{name}: no e1"))?;
            ensure(c.matching.contains(&e1), || format!("{name}: e1 not matched"))?;
            ensure(g.outer_edges().contains(&e1), || format!("{name}: e1 not on the boundary"))?;
        }
        out.push((name.clone(), g.clone(), c));
    }
    Ok(format!("{} graphs verified, max out-degree <= {bound}", corpus.len()))
}

fn fixtures() -> Vec<Graph> {
    let e = |n: u32, es: &[(u32, u32)]| Graph::from_edges(0..n, es.iter().copied()).unwrap();
    vec![
        e(3, &[(0, 1), (1, 2), (0, 2)]),
        e(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]),
        e(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]),
        e(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
        e(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]),
        e(5, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4), (4, 1)]),
        e(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]),
        e(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]),
        e(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (1, 2), (2, 3), (3, 4), (4, 5), (5, 1)]),
        e(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)]),
    ]
}

fn all_orientations(g: &Graph) -> impl Iterator<Item = Orientation> + '_ {
    let edges: Vec<Edge> = g.edges().collect();
    (0u32..1 << edges.len()).map(move |mask| {
        let arcs = edges.iter().enumerate().map(|(i, e)| {
            if mask >> i & 1 == 1 {
                Arc::new(e.hi(), e.lo())
            } else {
                Arc::new(e.lo(), e.hi())
            }
        });
        Orientation::new(g.clone(), arcs).unwrap()
    })
}

fn oracle_equivalence() -> Outcome {
    let mut checked = 0usize;
    for g in fixtures() {
        ensure(g.num_edges() <= 10, || "fixture too large".into())?;
        for o in all_orientations(&g) {
            let a = diff_enum(&o).map_err(|e| e.to_string())?.diff;
            let b = diff_coeff(&o).map_err(|e| e.to_string())?;
            ensure(a == b, || format!("{:?}: enum {a} coeff {b}", o.arcs().collect::<Vec<_>>()))?;
            checked += 1;
        }
    }
    let mut r = rng(4);
    for _ in 0..500 {
        let n = r.random_range(3..=7);
        let m = r.random_range(1..=14);
        let g = random_graph(&mut r, n, m);
        let o = random_orientation(&mut r, &g);
        let a = diff_enum(&o).map_err(|e| e.to_string())?.diff;
        let b = diff_coeff(&o).map_err(|e| e.to_string())?;
        ensure(a == b, || format!("{:?}: enum {a} coeff {b}", o.arcs().collect::<Vec<_>>()))?;
        checked += 1;
    }
    Ok(format!("{checked} orientations agree"))
}

fn lemma_one() -> Outcome {
    let mut r = rng(5);
    let mut nonzero = 0;
    for _ in 0..200 {
        let n = r.random_range(3..=6);
        let m = r.random_range(1..=12);
        let g = random_graph(&mut r, n, m);
        let d = random_orientation(&mut r, &g).out_degrees();
        let edges: Vec<Edge> = g.edges().collect();
        let e = edges[r.random_range(0..edges.len())];
        let h = g.without_edge(e).unwrap();
        let term = |d: Option<OutDegreeVector>| d.map_or(Ok(0), |d| coeff(&h, &d));
        let lhs = coeff(&g, &d).map_err(|e| e.to_string())?;
        let rhs = term(d.decremented(e.lo())).map_err(|e| e.to_string())?
            - term(d.decremented(e.hi())).map_err(|e| e.to_string())?;
        ensure(lhs == rhs, || format!("identity fails on {edges:?}, e = {e:?}"))?;
        nonzero += (lhs != 0) as usize;
    }
    let mut removals = 0;
    let mut r = rng(6);
    while removals < 200 {
        let n = r.random_range(3..=6);
        let m = r.random_range(1..=12);
        let g = random_graph(&mut r, n, m);
        let o = random_orientation(&mut r, &g);
        if diff_enum(&o).unwrap().diff == 0 {
            continue;
        }
        let w = WitnessedGraph::new(o.clone(), DegreeBudget::tight(&o)).map_err(|e| e.to_string())?;
        let edges: Vec<Edge> = g.edges().collect();
        let e = edges[r.random_range(0..edges.len())];
        let (next, _) = remove_edge_keep_at(&w, e).map_err(|err| format!("removal of {e:?}: {err}"))?;
        let enumerated = diff_enum(next.witness()).unwrap().diff;
        ensure(enumerated != 0 && enumerated == next.diff(), || "removal result not AT".into())?;
        removals += 1;
    }
    Ok(format!("200 identities ({nonzero} nonzero), {removals} removals, 0 violations"))
}

/// A low side on `0..a` and a high side whose shared vertices are sinks.
fn one_way_instance(r: &mut rand_chacha::ChaCha8Rng) -> Option<(WitnessedGraph, WitnessedGraph, Vec<Arc>)> {
    let a = r.random_range(4..=5);
    let lm = r.random_range(4..=9);
    let low = if r.random_bool(0.5) {
        // a directed 4-cycle has diff 2
        let mut arcs = vec![Arc::new(0, 1), Arc::new(1, 2), Arc::new(2, 3), Arc::new(3, 0)];
        for x in 4..a {
            arcs.push(Arc::new(x, r.random_range(0..4)));
        }
        Orientation::from_arcs(0..a, arcs).ok()?
    } else {
        let lg = random_graph(r, a, lm);
        random_orientation(r, &lg)
    };
    let k = r.random_range(1..=2);
    let shared: Vec<u32> = rand::seq::index::sample(r, a as usize, k)
        .into_iter()
        .map(|i| i as u32)
        .collect();
    let b = r.random_range(3..=4);
    let upper: Vec<u32> = (10..10 + b).collect();
    let mut arcs = Vec::new();
    for i in 0..upper.len() {
        for j in i + 1..upper.len() {
            if r.random_bool(0.8) {
                let (x, y) = (upper[i], upper[j]);
                arcs.push(if r.random_bool(0.5) { Arc::new(x, y) } else { Arc::new(y, x) });
            }
        }
    }
    for &s in &shared {
        for &u in &upper {
            if r.random_bool(0.5) {
                arcs.push(Arc::new(u, s));
            }
        }
    }
    let high = Orientation::from_arcs(upper.iter().chain(&shared).copied(), arcs).ok()?;
    let mut cross = Vec::new();
    for x in 0..a {
        if shared.contains(&x) {
            continue;
        }
        if r.random_bool(0.3) {
            cross.push(Arc::new(upper[r.random_range(0..upper.len())], x));
        }
    }
    if low.num_arcs() + high.num_arcs() + cross.len() > 18 {
        return None;
    }
    if diff_enum(&low).ok()?.diff == 0 || diff_enum(&high).ok()?.diff == 0 {
        return None;
    }
    let wl = WitnessedGraph::new(low.clone(), DegreeBudget::tight(&low)).ok()?;
    let wh = WitnessedGraph::new(high.clone(), DegreeBudget::tight(&high)).ok()?;
    Some((wh, wl, cross))
}

fn multiplicativity() -> Outcome {
    let mut r = rng(7);
    let mut done = 0;
    let mut nontrivial = 0;
    while done < 50 {
        let Some((high, low, cross)) = one_way_instance(&mut r) else {
            continue;
        };
        let all: Vec<Arc> = high.witness().arcs().chain(low.witness().arcs()).chain(cross.iter().copied()).collect();
        let vertices: Vec<u32> = high.graph().vertices().chain(low.graph().vertices()).collect();
        let combined = Orientation::from_arcs(vertices, all).map_err(|e| e.to_string())?;
        let u = union_one_way(&high, &low, &cross, DegreeBudget::tight(&combined)).map_err(|e| e.to_string())?;
        let whole = diff_enum(u.witness()).unwrap().diff;
        let parts = diff_enum(high.witness()).unwrap().diff * diff_enum(low.witness()).unwrap().diff;
        ensure(whole == parts && u.diff() == parts, || format!("union {whole} vs product {parts}"))?;
        nontrivial += (parts.abs() > 1) as usize;
        done += 1;
    }
    Ok(format!("{done} unions equal the product ({nontrivial} with |diff| > 1)"))
}

fn gadget_parity(certs: &[(String, PlaneGraph, Certificate)]) -> Outcome {
    let mut checked = 0;
    for (name, _, c) in certs {
        for step in c.peel_steps() {
            let TraceStep::Peel { arcs, parity, .. } = step else {
                unreachable!()
            };
            if *arcs <= 18 {
                let p = parity.ok_or_else(|| format!("{name}: small peel without parity check"))?;
                ensure(p.diff_before == p.diff_after, || format!("{name}: parity {p:?}"))?;
                checked += 1;
            }
        }
    }
    ensure(checked > 0, || "no small peel steps".into())?;
    Ok(format!("{checked} peel steps pass the enumeration check"))
}

fn at_numbers() -> Outcome {
    let f = fixtures();
    let cases = [("K3", &f[0], 3), ("C4", &f[1], 2), ("C5", &f[2], 3), ("K4", &f[3], 4)];
    let mut got = Vec::new();
    for (name, g, want) in cases {
        let k = at_number(g).map_err(|e| e.to_string())?;
        ensure(k == want, || format!("AT({name}) = {k}, expected {want}"))?;
        got.push(format!("{name}={k}"));
    }
    Ok(got.join(" "))
}

fn choosability(certs: &[(String, PlaneGraph, Certificate)]) -> Outcome {
    let mut checked = 0;
    for (i, (name, g, c)) in certs.iter().enumerate() {
        if g.num_vertices() > 16 {
            continue;
        }
        let h = without_matching(g, c);
        let f = DegreeBudget::from(c.budget.clone());
        let v = sampled_choosability_check(&h, &f, 200, 1000 + i as u64).map_err(|e| e.to_string())?;
        ensure(v.pass, || format!("{name} ({:?}): counterexample {:?}", c.kind, v.counterexample))?;
        checked += 1;
    }
    Ok(format!("{checked} certificates, {} samples, 0 counterexamples", checked * 200))
}

fn main() -> ExitCode {
    let mut report = Report { failures: 0 };
    let corpus = corpus();
    let mut certs = Vec::new();

    report.run(1, "base case fidelity", secs(1), base_case);
    report.run(2, "AT <= 5 on the corpus", secs(120), || corpus_certificates(&corpus, false, &mut certs));
    report.run(3, "matching AT <= 4 on the corpus", secs(180), || corpus_certificates(&corpus, true, &mut certs));
    report.run(4, "diff_enum equals diff_coeff", secs(60), oracle_equivalence);
    report.run(5, "edge-removal identity and removals", secs(60), lemma_one);
    report.run(6, "one-way-cut multiplicativity", secs(30), multiplicativity);
    report.run(7, "gadget parity", secs(60), || gadget_parity(&certs));
    report.run(8, "brute-force AT numbers", secs(60), at_numbers);
    report.run(9, "sampled choosability", secs(120), || choosability(&certs));

    if report.failures == 0 {
        println!("acceptance: all 9 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} criteria failed", report.failures);
        ExitCode::FAILURE
    }
}
