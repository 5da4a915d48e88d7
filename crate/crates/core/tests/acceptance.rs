//! Acceptance suite: one PASS/FAIL line per criterion, exact arithmetic
//! throughout. Runs without the libtest harness so the lines are printed in
//! order; the process exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::time::Instant;

use rayon::prelude::*;

use toric_richardson::classify::{
    all_intervals, classify_batch, is_toric, sample_intervals, sample_toric_intervals,
};
use toric_richardson::families::{
    hypercube_perms, is_boolean_lattice, verify_even_family, verify_hypercube,
};
use toric_richardson::geometry::face_lattice;
use toric_richardson::moment::{
    moment_polytope, same_combinatorial_type, structure_report, MomentPolytope, SummandData,
};
use toric_richardson::mrgraph::{
    all_flag_minors, build_graph, default_reduced_word, flag_minor, flag_minor_poly,
    incidence_plucker_failures, last_descent_reduced_word, ni_path_collections, symbolic_matrix,
    ReducedWord,
};
use toric_richardson::perm::interval as interval_of;
use toric_richardson::positroid::constituent;
use toric_richardson::{Permutation, Subset};

const SEED: u64 = 20240601;

type Outcome = Result<String, String>;

fn p(s: &str) -> Permutation {
    Permutation::parse(s).expect("valid permutation")
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn labelled(s: &SummandData) -> Vec<String> {
    s.labels
        .iter()
        .map(|(b, m)| format!("{}[{b}]", m.iter().map(i64::to_string).collect::<String>()))
        .collect()
}

fn with_word(v: &str, w: &str, word: &[usize]) -> Result<MomentPolytope, String> {
    let w = p(w);
    let word = ReducedWord::for_permutation(&w, word.to_vec()).map_err(|e| e.to_string())?;
    moment_polytope(&p(v), &w, &word).map_err(|e| e.to_string())
}

/// Toric intervals of `S_4` and the seeded sample of `S_5` shared by the
/// LGV and structure criteria.
fn toric_test_set() -> Vec<(Permutation, Permutation)> {
    let mut out: Vec<(Permutation, Permutation)> = all_intervals(4)
        .into_iter()
        .filter(|(v, w)| is_toric(v, w).expect("comparable"))
        .collect();
    out.extend(sample_toric_intervals(5, 25, 2, SEED));
    out
}

fn criterion_1() -> Outcome {
    let mut pairs = all_intervals(4);
    let s4 = pairs.len();
    pairs.extend(sample_intervals(5, 500, SEED));
    let verdicts = classify_batch(&pairs);
    let mut toric = 0;
    for (r, (v, w)) in verdicts.iter().zip(&pairs) {
        let verdict = r.as_ref().map_err(|e| format!("[{v},{w}]: {e}"))?;
        let flags = [
            verdict.by_two_crown,
            verdict.by_lattice,
            verdict.by_interval_poset_lattice,
            verdict.by_r_poly,
        ];
        check(flags.iter().all(|&f| f == flags[0]), || {
            format!("[{v},{w}]: tests disagree {flags:?}")
        })?;
        toric += usize::from(verdict.is_toric);
    }
    Ok(format!(
        "{s4} intervals of S_4 and 500 of S_5 agree on all four tests ({toric} toric)"
    ))
}

/// Faces of the polytope, labelled by interval elements, against the
/// element sets of all subintervals.
fn face_lattice_is_interval_lattice(m: &MomentPolytope) -> Result<(), String> {
    let labels = m
        .element_of_vertex()
        .ok_or("X_u are not distinct vertices")?;
    let faces = face_lattice(&m.polytope)
        .map_err(|e| e.to_string())?
        .relabeled(&labels);
    let iv = &m.interval;
    let up = iv.up_sets();
    let mut subintervals: BTreeSet<Vec<usize>> = BTreeSet::from([Vec::new()]);
    for a in 0..iv.len() {
        for b in up[a].iter() {
            subintervals.insert(
                (0..iv.len())
                    .filter(|&c| up[a].contains(c) && up[c].contains(b))
                    .collect(),
            );
        }
    }
    check(faces == subintervals, || {
        format!(
            "{} faces vs {} subintervals",
            faces.len(),
            subintervals.len()
        )
    })
}

fn criterion_2() -> Outcome {
    let m = with_word("1324", "4231", &[1, 2, 3, 2, 1])?;
    let expected = [
        vec!["0000[1]", "1000[2]", "0001[3]", "0011[4]"],
        vec!["0000[13]", "0010[14]", "1000[23]", "1010[24]"],
        vec!["0000[123]", "0010[124]", "0110[134]", "1110[234]"],
    ];
    for (s, e) in m.summands.iter().zip(&expected) {
        check(labelled(s) == *e, || {
            format!("summand k={}: {:?}", s.k, labelled(s))
        })?;
    }
    let f = face_lattice(&m.polytope)
        .map_err(|e| e.to_string())?
        .f_vector();
    check(f == [16, 32, 24, 8, 1], || format!("f-vector {f:?}"))?;
    face_lattice_is_interval_lattice(&m)?;
    structure_report(&m).map_err(|e| e.to_string())?;
    Ok("summands match, f-vector (16,32,24,8,1), face lattice = Int[1324,4231]".into())
}

fn criterion_3() -> Outcome {
    let m = with_word("2143", "4231", &[1, 2, 3, 2, 1])?;
    let expected = [
        vec!["000[2]", "010[3]", "001[4]"],
        vec!["000[12]", "010[13]", "001[14]", "110[23]", "101[24]"],
        vec!["000[124]", "010[134]", "110[234]"],
    ];
    for (s, e) in m.summands.iter().zip(&expected) {
        check(labelled(s) == *e, || {
            format!("summand k={}: {:?}", s.k, labelled(s))
        })?;
    }
    let fl = face_lattice(&m.polytope).map_err(|e| e.to_string())?;
    let f = fl.f_vector();
    check(f == [10, 16, 8, 1], || format!("f-vector {f:?}"))?;
    check(
        fl.faces_of_dim(2).all(|i| fl.faces()[i].count() == 4),
        || "a 2-face is not a quadrilateral".into(),
    )?;
    let edges = m.polytope.edges();
    let max_degree = (0..m.polytope.num_vertices())
        .map(|v| edges.iter().filter(|&&(a, b)| a == v || b == v).count())
        .max();
    check(max_degree == Some(4), || {
        format!("maximum vertex degree {max_degree:?}")
    })?;
    face_lattice_is_interval_lattice(&m)?;
    Ok("summands match, 10 vertices, 16 edges, 8 quadrilaterals, a 4-valent vertex".into())
}

fn lgv_checks(v: &Permutation, w: &Permutation) -> Result<usize, String> {
    let ctx = |e: String| format!("[{v},{w}]: {e}");
    let iv = interval_of(v, w).map_err(|e| ctx(e.to_string()))?;
    let graph = build_graph(v, &default_reduced_word(w)).map_err(|e| ctx(e.to_string()))?;
    let minors = all_flag_minors(&symbolic_matrix(&graph));
    let n = v.n();
    let mut count = 0;
    for k in 1..n {
        let bases = constituent(&iv, k).bases;
        for rows in Subset::all_of_size(n, k) {
            let lgv = flag_minor_poly(&graph, rows);
            check(lgv == minors[&rows], || {
                ctx(format!("Δ_{rows}: LGV {lgv} vs matrix {}", minors[&rows]))
            })?;
            check(lgv.is_zero() != bases.contains(&rows), || {
                ctx(format!("support differs at {rows}"))
            })?;
            if bases.contains(&rows) {
                check(ni_path_collections(&graph, rows).len() == 1, || {
                    ctx(format!("{rows} has several collections"))
                })?;
                let terms = flag_minor(&graph, rows);
                check(terms.len() == 1 && terms[0].is_squarefree_monic(), || {
                    ctx(format!("Δ_{rows} not squarefree monic"))
                })?;
            }
            count += 1;
        }
    }
    Ok(count)
}

fn criterion_4() -> Outcome {
    let set = toric_test_set();
    let counts: Vec<Result<usize, String>> =
        set.par_iter().map(|(v, w)| lgv_checks(v, w)).collect();
    let mut total = 0;
    for c in counts {
        total += c?;
    }
    for (v, w) in [("1324", "4231"), ("2143", "4231")] {
        let graph = build_graph(&p(v), &default_reduced_word(&p(w))).map_err(|e| e.to_string())?;
        let failures = incidence_plucker_failures(&all_flag_minors(&symbolic_matrix(&graph)), 4);
        check(failures.is_empty(), || {
            format!(
                "[{v},{w}]: {} incidence Plücker relations fail",
                failures.len()
            )
        })?;
    }
    Ok(format!("{} toric intervals, {total} minors: LGV = matrix minors, supports = constituents, unique monic terms; Plücker relations vanish", set.len()))
}

fn criterion_5() -> Outcome {
    let set = toric_test_set();
    let results: Vec<Result<(), String>> = set
        .par_iter()
        .map(|(v, w)| {
            let m = moment_polytope(v, w, &default_reduced_word(w))
                .map_err(|e| format!("[{v},{w}]: {e}"))?;
            structure_report(&m)
                .map(|_| ())
                .map_err(|e| format!("[{v},{w}]: {e}"))
        })
        .collect();
    for r in results {
        r?;
    }
    Ok(format!("{} toric intervals pass affine maps, vertices, edges, 2-faces, atoms, 1-skeleton, Minkowski identity", set.len()))
}

fn criterion_6() -> Outcome {
    let mut notes = Vec::new();
    for n in [4usize, 6, 8] {
        let report = verify_even_family(n, 20, SEED).map_err(|e| format!("n={n}: {e}"))?;
        check(report.passed(), || format!("n={n}: {:?}", report.failures))?;
        notes.push(format!("n={n}: {} minors", report.minors_checked));
    }
    Ok(format!(
        "{}; star positroids, f-vectors and z relations at 20 points hold",
        notes.join(", ")
    ))
}

fn criterion_7() -> Outcome {
    let h2 = hypercube_perms(2).map_err(|e| e.to_string())?;
    check(
        (h2.v.clone(), h2.w.clone()) == (p("1324"), p("4231")),
        || "n=2 is not the base case".into(),
    )?;
    check(is_boolean_lattice(&h2.interval()), || {
        "n=2 interval is not B_4".into()
    })?;
    let r2 = verify_hypercube(2, None, 0, SEED).map_err(|e| e.to_string())?;
    check(r2.passed(), || format!("n=2: {:?}", r2.failures))?;
    let r3 = verify_hypercube(3, None, 1000, SEED).map_err(|e| e.to_string())?;
    check(r3.passed(), || format!("n=3: {:?}", r3.failures))?;
    check(r3.interval_size == Some(4096), || {
        format!("n=3 interval has {:?} elements", r3.interval_size)
    })?;
    let r4 = verify_hypercube(4, None, 0, SEED).map_err(|e| e.to_string())?;
    check(r4.passed(), || format!("n=4: {:?}", r4.failures))?;
    Ok(format!(
        "n=2 ≅ B_4; n=3: 4096 elements, ranks {:?}, dyadic ⇔ member (+1000 non-members), constituents match; n=4: {} bases match plabic graphs",
        r3.rank_sizes.unwrap_or_default(),
        r4.bases_checked
    ))
}

fn criterion_8() -> Outcome {
    let mut candidates: Vec<(Permutation, Permutation)> = all_intervals(4)
        .into_iter()
        .filter(|(v, w)| {
            default_reduced_word(w) != last_descent_reduced_word(w)
                && is_toric(v, w).expect("comparable")
        })
        .collect();
    candidates.extend(
        sample_toric_intervals(5, 10, 3, SEED)
            .into_iter()
            .filter(|(_, w)| default_reduced_word(w) != last_descent_reduced_word(w)),
    );
    let mut checked = 0;
    for (v, w) in &candidates {
        let a = moment_polytope(v, w, &default_reduced_word(w)).map_err(|e| e.to_string())?;
        let b = moment_polytope(v, w, &last_descent_reduced_word(w)).map_err(|e| e.to_string())?;
        let same = same_combinatorial_type(&a, &b).map_err(|e| format!("[{v},{w}]: {e}"))?;
        check(same, || format!("[{v},{w}]: face lattices differ"))?;
        checked += 1;
    }
    check(checked >= 5, || {
        format!("only {checked} intervals with two distinct words")
    })?;
    Ok(format!(
        "{checked} toric intervals with two distinct reduced words give the same face lattice"
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("classification equivalence", criterion_1),
        ("base case", criterion_2),
        ("4-crown", criterion_3),
        ("LGV soundness", criterion_4),
        ("structure suite", criterion_5),
        ("even family", criterion_6),
        ("hypercube family", criterion_7),
        ("word independence", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {} ({name}, {secs:.1}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {} ({name}, {secs:.1}s): {detail}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
