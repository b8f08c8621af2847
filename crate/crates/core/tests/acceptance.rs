//! Acceptance suite. Runs without the libtest harness so every criterion
//! prints one PASS/FAIL line; exits nonzero if any fails.

mod common;

use std::collections::{BTreeMap, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{pow23, EdgeList, Exps};
use dimerlab::formulas::{
    pm_line_formula, pm_middle_cubic_even, pm_middle_cubic_minus_edge, predict_pm_middle,
    PredictionTag,
};
use dimerlab::lattices::{
    named_cubic, random_cubic, random_subcubic, LatticeFamily, LatticeSpec, NamedCubic,
};
use dimerlab::matching::{count_pm, structured_pm_families, weighted_pm_sum, Method};
use dimerlab::transforms::{line_graph, middle_graph, reduction_step};
use dimerlab::{Count, Graph, WeightPolynomial, WeightSymbol};

type Check = fn() -> Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn big(x: u128) -> Count {
    Count::from(x)
}

fn enum_count(g: &Graph) -> Count {
    count_pm(g, Method::Enumerate).unwrap()
}

fn dp_count(g: &Graph) -> Count {
    count_pm(g, Method::FrontierDp).unwrap()
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    ensure!(t < limit, "{what} took {t:?}, limit {limit:?}");
    Ok(())
}

fn poly_map(p: &WeightPolynomial) -> BTreeMap<Exps, u128> {
    p.terms()
        .map(|(m, c)| (m.0, c.to_string().parse().unwrap()))
        .collect()
}

fn cubic_corpus() -> Vec<(usize, u64, Graph)> {
    let mut out = Vec::new();
    for n in [4, 8, 12] {
        for seed in 0..10 {
            out.push((n, seed, random_cubic(n, 1000 * n as u64 + seed).unwrap()));
        }
    }
    out
}

fn subcubic_corpus(count: usize, nmax: usize, even: bool) -> Vec<Graph> {
    let lo = if even { 3 } else { 1 };
    (0..count)
        .map(|t| {
            let n = lo + t % (nmax - lo + 1);
            random_subcubic(n, 77 + t as u64, even).unwrap()
        })
        .collect()
}

fn criterion_1() -> Result<String, String> {
    for (name, expected) in [(NamedCubic::K4, 24u128), (NamedCubic::Cube, 288)] {
        let start = Instant::now();
        let g = named_cubic(name);
        let m = middle_graph(&g);
        let count = enum_count(&m);
        ensure!(
            count == big(expected),
            "{name}: engine {count}, expected {expected}"
        );
        let formula = pm_middle_cubic_even(&g).map_err(|e| e.to_string())?;
        ensure!(
            formula == count,
            "{name}: formula {formula} vs count {count}"
        );
        let oracle = EdgeList::of(&g).middle().count_pm();
        ensure!(oracle == expected, "{name}: oracle {oracle}");
        within(start, Duration::from_secs(1), name.name())?;
    }
    Ok("M(K4)=24, M(Q3)=288".into())
}

fn criterion_2() -> Result<String, String> {
    let start = Instant::now();
    let corpus = cubic_corpus();
    for (n, seed, g) in &corpus {
        let base = EdgeList::of(g);
        ensure!(
            base.is_connected() && (0..*n).all(|v| base.degree(v) == 3),
            "corpus graph not cubic"
        );
        ensure!(base.edges.len().is_multiple_of(2), "odd edge count");
        let expected = pow23((n / 2 + 1) as u32, (n / 4) as u32);
        let oracle = base.middle().count_pm();
        ensure!(
            oracle == expected,
            "n={n} seed={seed}: oracle {oracle}, expected {expected}"
        );
        let engine = enum_count(&middle_graph(g));
        ensure!(
            engine == big(expected),
            "n={n} seed={seed}: engine {engine}"
        );
    }
    within(start, Duration::from_secs(120), "corpus")?;
    Ok(format!("{} random cubic graphs", corpus.len()))
}

fn criterion_3() -> Result<String, String> {
    let start = Instant::now();
    let mut corpus = cubic_corpus();
    corpus.push((4, 0, named_cubic(NamedCubic::K4)));
    corpus.push((8, 0, named_cubic(NamedCubic::Cube)));
    for (n, seed, g) in &corpus {
        let m = g.edge_count();
        let fams = structured_pm_families(g).map_err(|e| format!("n={n} seed={seed}: {e}"))?;
        let expected_families = pow23((m - n + 1) as u32, 0) as usize;
        let expected_size = pow23(0, (n / 4) as u32) as usize;
        ensure!(
            fams.len() == expected_families,
            "{} families, expected {expected_families}",
            fams.len()
        );
        let mg = middle_graph(g);
        let lg = line_graph(g);
        let mut seen = HashSet::new();
        for f in &fams {
            ensure!(
                f.members.len() == expected_size,
                "family {} has {} members",
                f.index,
                f.members.len()
            );
            ensure!(
                perfect_in(&lg, f.line_matching.edges()),
                "family {} line matching",
                f.index
            );
            for member in &f.members {
                ensure!(
                    perfect_in(&mg, member.edges()),
                    "family {} member not perfect",
                    f.index
                );
                ensure!(seen.insert(member.edges().to_vec()), "families overlap");
            }
        }
        let total = EdgeList::of(g).middle().count_pm();
        ensure!(
            seen.len() as u128 == total,
            "union {} vs oracle {total}",
            seen.len()
        );
    }
    within(start, Duration::from_secs(300), "audit")?;
    Ok(format!("{} graphs audited", corpus.len()))
}

fn perfect_in(g: &Graph, edges: &[usize]) -> bool {
    let mut hit = vec![0; g.vertex_count()];
    for &e in edges {
        let edge = &g.edges()[e];
        hit[edge.u] += 1;
        hit[edge.v] += 1;
    }
    hit.iter().all(|&h| h == 1)
}

fn criterion_4() -> Result<String, String> {
    let start = Instant::now();
    let mut checked = 0;
    for (name, expected) in [
        (NamedCubic::Petersen, 288u128),
        (NamedCubic::K33, 24),
        (NamedCubic::Prism, 24),
    ] {
        let g = named_cubic(name);
        let base = EdgeList::of(&g);
        ensure!(base.bridges().is_empty(), "{name} has a cut edge");
        for e in 0..g.edge_count() {
            let oracle = base.without_edge(e).middle().count_pm();
            ensure!(
                oracle == expected,
                "{name} - {e}: oracle {oracle}, expected {expected}"
            );
            let p = pm_middle_cubic_minus_edge(&g, e).map_err(|x| x.to_string())?;
            ensure!(
                p.tag == PredictionTag::MinusNonBridge,
                "{name} - {e}: tag {:?}",
                p.tag
            );
            ensure!(
                p.as_count() == Some(&big(expected)),
                "{name} - {e}: formula {:?}",
                p.as_count()
            );
            checked += 1;
        }
    }
    within(start, Duration::from_secs(60), "edge deletions")?;
    Ok(format!("{checked} edge deletions"))
}

fn criterion_5() -> Result<String, String> {
    let start = Instant::now();
    for (name, expected, tag) in [
        (
            NamedCubic::Bridged10,
            576u128,
            PredictionTag::MinusBridgeOddSides,
        ),
        (
            NamedCubic::Bridged14,
            0,
            PredictionTag::MinusBridgeEvenSides,
        ),
    ] {
        let g = named_cubic(name);
        let base = EdgeList::of(&g);
        let bridges = base.bridges();
        ensure!(bridges.len() == 1, "{name}: {} bridges", bridges.len());
        let e = bridges[0];
        let split = base.without_edge(e);
        let sides = split.components();
        ensure!(
            sides.len() == 2,
            "{name}: bridge leaves {} parts",
            sides.len()
        );
        for &(ni, mi) in &sides {
            ensure!(
                3 * (ni - 1) + 2 == 2 * mi,
                "{name}: side ({ni},{mi}) breaks 3(n-1)+2=2m"
            );
        }
        let (n, m) = (g.vertex_count(), g.edge_count());
        ensure!(
            sides[0].0 + sides[1].0 == n && sides[0].1 + sides[1].1 + 1 == m,
            "{name}: side sums"
        );
        let oracle = split.middle().count_pm();
        ensure!(
            oracle == expected,
            "{name}: oracle {oracle}, expected {expected}"
        );
        let p = pm_middle_cubic_minus_edge(&g, e).map_err(|x| x.to_string())?;
        ensure!(p.tag == tag, "{name}: tag {:?}", p.tag);
        ensure!(
            p.as_count() == Some(&big(expected)),
            "{name}: formula {:?}",
            p.as_count()
        );
    }
    within(start, Duration::from_secs(60), "bridges")?;
    Ok("bridged10=576, bridged14=0".into())
}

fn criterion_6() -> Result<String, String> {
    let start = Instant::now();
    let corpus = subcubic_corpus(30, 12, true);
    for g in &corpus {
        let base = EdgeList::of(g);
        let (n, m) = (base.n, base.edges.len());
        ensure!(
            base.is_connected() && base.max_degree() <= 3 && m % 2 == 0 && n <= 12,
            "corpus contract"
        );
        let expected = pow23((m + 1 - n) as u32, 0);
        let oracle = base.line().count_pm();
        ensure!(
            oracle == expected,
            "n={n} m={m}: oracle {oracle}, expected {expected}"
        );
        ensure!(
            enum_count(&line_graph(g)) == big(expected),
            "n={n} m={m}: engine"
        );
        let formula = pm_line_formula(g).map_err(|e| e.to_string())?;
        ensure!(formula == big(expected), "n={n} m={m}: formula {formula}");
    }
    within(start, Duration::from_secs(60), "line graphs")?;
    Ok(format!("{} graphs", corpus.len()))
}

fn criterion_7() -> Result<String, String> {
    let start = Instant::now();
    let corpus = subcubic_corpus(50, 10, false);
    let (mut steps, mut fallback) = (0, 0);
    for g in &corpus {
        let truth = EdgeList::of(g).middle().count_pm();
        let mut cur = g.clone();
        while let Some((next, step)) = reduction_step(&cur) {
            let before = EdgeList::of(&cur).middle().count_pm();
            let after = EdgeList::of(&next).middle().count_pm();
            ensure!(before == after, "{step:?}: {before} -> {after}");
            cur = next;
            steps += 1;
        }
        let p = predict_pm_middle(g).map_err(|e| e.to_string())?;
        match p.as_count() {
            Some(c) => ensure!(
                *c == big(truth),
                "predict {c} vs oracle {truth} ({:?})",
                p.tag
            ),
            None => {
                ensure!(
                    p.tag == PredictionTag::NotCovered,
                    "valueless tag {:?}",
                    p.tag
                );
                ensure!(enum_count(&middle_graph(g)) == big(truth), "fallback count");
                fallback += 1;
            }
        }
    }
    within(start, Duration::from_secs(120), "reductions")?;
    Ok(format!(
        "{} graphs, {steps} steps, {fallback} by oracle fallback",
        corpus.len()
    ))
}

/// `32 (xyz)^2 (ax + by + cz)^2` expanded by the multinomial theorem.
fn silicate_expansion() -> BTreeMap<Exps, u128> {
    let mut out = BTreeMap::new();
    for i in 0..=2u32 {
        for j in 0..=2 - i {
            let k = 2 - i - j;
            let fact = |x: u32| (1..=x as u128).product::<u128>();
            let coeff = 32 * 2 / (fact(i) * fact(j) * fact(k));
            out.insert([i, j, k, 2 + i, 2 + j, 2 + k], coeff);
        }
    }
    out
}

fn criterion_8() -> Result<String, String> {
    let start = Instant::now();
    let build = |family, rows, cols, weighted| {
        LatticeSpec::new(family, rows, cols, weighted)
            .build()
            .unwrap()
    };
    for (rows, cols, expected) in [(2, 2, 32u128), (2, 3, 128)] {
        let k = build(LatticeFamily::Kagome, rows, cols, false);
        ensure!(enum_count(&k) == big(expected), "K({rows},{cols}) engine");
        ensure!(
            EdgeList::of(&k).count_pm() == expected,
            "K({rows},{cols}) oracle"
        );
    }
    let kw = build(LatticeFamily::Kagome, 2, 2, true);
    let expected: BTreeMap<Exps, u128> = [([2, 2, 2, 0, 0, 0], 32)].into();
    ensure!(
        poly_map(&weighted_pm_sum(&kw)) == expected,
        "Kw(2,2) engine"
    );
    ensure!(
        EdgeList::of(&kw).weighted_pm() == expected,
        "Kw(2,2) oracle"
    );

    let s = build(LatticeFamily::Silicate, 2, 2, false);
    ensure!(enum_count(&s) == big(288), "S(2,2) engine");
    ensure!(EdgeList::of(&s).count_pm() == 288, "S(2,2) oracle");

    let sw = build(LatticeFamily::Silicate, 2, 2, true);
    let expected = silicate_expansion();
    let engine = poly_map(&weighted_pm_sum(&sw));
    ensure!(engine == expected, "Sw(2,2) engine {engine:?}");
    ensure!(
        EdgeList::of(&sw).weighted_pm() == expected,
        "Sw(2,2) oracle"
    );
    within(start, Duration::from_secs(120), "lattices")?;
    Ok("K(2,2)=32, K(2,3)=128, Kw(2,2), S(2,2)=288, Sw(2,2) term-by-term".into())
}

fn criterion_9() -> Result<String, String> {
    let mut graphs: Vec<Graph> = Vec::new();
    for (_, _, g) in cubic_corpus() {
        graphs.push(middle_graph(&g));
        graphs.push(g);
    }
    for g in subcubic_corpus(30, 12, true)
        .into_iter()
        .chain(subcubic_corpus(50, 10, false))
    {
        graphs.push(line_graph(&g));
        graphs.push(middle_graph(&g));
        graphs.push(g);
    }
    for name in NamedCubic::ALL {
        graphs.push(middle_graph(&named_cubic(name)));
    }
    let mut compared = 0;
    for g in graphs.iter().filter(|g| g.vertex_count() <= 16) {
        let (a, b) = (enum_count(g), dp_count(g));
        ensure!(
            a == b,
            "enumeration {a} vs DP {b} on {} vertices",
            g.vertex_count()
        );
        compared += 1;
    }

    let mut weighted = 0;
    for family in [
        LatticeFamily::Honeycomb,
        LatticeFamily::Kagome,
        LatticeFamily::Silicate,
    ] {
        let g = LatticeSpec::new(family, 2, 2, true).build().unwrap();
        let at_one = weighted_pm_sum(&g).eval_at_one();
        ensure!(
            at_one == enum_count(&g),
            "{family:?}: weights at one {at_one}"
        );
        weighted += 1;
    }
    let mut k4 = middle_graph(&named_cubic(NamedCubic::K4));
    for e in 0..k4.edge_count() {
        let s = WeightSymbol::VARIABLES[e % 6];
        k4.set_weight(e, s).unwrap();
    }
    ensure!(
        weighted_pm_sum(&k4).eval_at_one() == big(24),
        "weighted M(K4) at one"
    );
    weighted += 1;

    let mut zeros = 0;
    for g in subcubic_corpus(50, 10, false) {
        if (g.vertex_count() + g.edge_count()) % 2 == 1 {
            let m = middle_graph(&g);
            ensure!(
                enum_count(&m).to_string() == "0",
                "odd-order M(G) enumerates nonzero"
            );
            ensure!(dp_count(&m).to_string() == "0", "odd-order M(G) DP nonzero");
            let p = predict_pm_middle(&g).map_err(|e| e.to_string())?;
            ensure!(p.tag == PredictionTag::ParityZero, "tag {:?}", p.tag);
            zeros += 1;
        }
    }
    ensure!(zeros > 0, "corpus has no odd-order middle graph");
    Ok(format!(
        "{compared} graphs compared, {weighted} weighted, {zeros} parity-zero"
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, Check); 9] = [
        ("1 middle graphs of K4 and Q3", criterion_1),
        ("2 random cubic corpus", criterion_2),
        ("3 structured family audit", criterion_3),
        ("4 non-bridge edge deletion", criterion_4),
        ("5 bridge deletion", criterion_5),
        ("6 line graphs", criterion_6),
        ("7 reduction conservation", criterion_7),
        ("8 lattices", criterion_8),
        ("9 engine self-consistency", criterion_9),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let t = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {name}: PASS ({detail}; {t:.2}s)"),
            Err(why) => {
                failed += 1;
                println!("criterion {name}: FAIL ({why})");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
