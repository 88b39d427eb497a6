//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Budgets are wall-clock and assume a release-like build
//! (the test profile is optimized).

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use bivincular::bijections::{
    generate_ascent_sequences, map_f, map_f_inverse, map_g, map_g_inverse, map_h, pattern_132, pattern_231,
};
use bivincular::closed_forms::catalog::{APPENDIX_CLASSES, CATALOG};
use bivincular::closed_forms::{
    c09_alternative, c09_sum, c10_ingredients, c10_step, c12_alternating, c12_counts_by_max_position,
    c12_from_next_non_derangements, c12_from_non_derangements, c12_recurrence, max_excedence_sum, verify_registry,
    FormulaId,
};
use bivincular::enumeration::{
    burnside_direct, burnside_s, burnside_table, distributions_equal, symmetry_partition, wilf_classify,
    ClassificationReport,
};
use bivincular::pattern::{avoids, enumerate_patterns};
use bivincular::perm::permutations_of;
use bivincular::{avoidance_sequence, BiVincularPattern, BoundarySet, Permutation};
use num_bigint::BigUint;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, budget: Duration) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took <= budget, format!("took {took:.2?}, budget {budget:?}"))
}

fn pat(s: &str) -> BiVincularPattern {
    s.parse().expect("literal pattern")
}

fn single_threaded<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new().num_threads(1).build().expect("pool").install(f)
}

/// Compares each catalog row of length `k` with the class holding its
/// representative.
fn compare_rows(report: &ClassificationReport, k: usize) -> Result<usize, String> {
    let mut rows = 0;
    for entry in CATALOG.iter().filter(|e| e.id.pattern_len() == k) {
        let rep = pat(entry.representative).canonical();
        let class = report
            .classes
            .iter()
            .find(|c| c.members.contains(&rep))
            .ok_or_else(|| format!("{rep} is in no class"))?;
        ensure(class.terms == entry.table_terms, format!("{}: {:?} != {:?}", entry.id, class.terms, entry.table_terms))?;
        rows += 1;
    }
    Ok(rows)
}

fn table1() -> Check {
    let t = Instant::now();
    let report = wilf_classify(2, 7).map_err(|e| e.to_string())?;
    let rows = compare_rows(&report, 2)?;
    within(t, Duration::from_secs(1))?;
    ensure(rows == 7 && report.classes.len() == 7, format!("{rows} rows, {} classes", report.classes.len()))?;
    Ok(format!("7 rows exact in {:.2?}", t.elapsed()))
}

fn table2() -> Check {
    let t = Instant::now();
    let report = single_threaded(|| wilf_classify(3, 7)).map_err(|e| e.to_string())?;
    let took = t.elapsed();
    let rows = compare_rows(&report, 3)?;
    within(t, Duration::from_secs(30))?;
    let members: usize = report.classes.iter().map(|c| c.members.len()).sum();
    ensure(rows == 24 && members == 212, format!("{rows} rows over {members} representatives"))?;
    Ok(format!(
        "24 rows exact over 212 representatives in {took:.2?} on one thread ({} Wilf classes found)",
        report.classes.len()
    ))
}

fn symmetry() -> Check {
    let t = Instant::now();
    let counts = (enumerate_patterns(2).map_err(|e| e.to_string())?.len(), enumerate_patterns(3).map_err(|e| e.to_string())?.len());
    let orbits = (symmetry_partition(2).map_err(|e| e.to_string())?.len(), symmetry_partition(3).map_err(|e| e.to_string())?.len());
    within(t, Duration::from_secs(1))?;
    ensure(counts == (128, 1536) && orbits == (24, 212), format!("{counts:?} patterns, {orbits:?} orbits"))?;
    Ok("128/1536 patterns, 24/212 orbits".into())
}

fn burnside() -> Check {
    for (n, v) in [(2, 24u64), (3, 212), (4, 3220)] {
        let s = burnside_s(n).map_err(|e| e.to_string())?;
        let t = Instant::now();
        let d = burnside_direct(n).map_err(|e| e.to_string())?;
        if n == 4 {
            within(t, Duration::from_secs(10))?;
        }
        ensure(s == BigUint::from(v) && d == v, format!("n={n}: formula {s}, direct {d}"))?;
    }
    ensure(burnside_s(5).map_err(|e| e.to_string())? == BigUint::from(61924u32), "s_5")?;
    let table = burnside_table(7).map_err(|e| e.to_string())?;
    let six = table.iter().find(|r| r.n == 6).ok_or("no n=6 row")?;
    ensure(six.value == BigUint::from(1_478_528u32), format!("s_6 = {}", six.value))?;
    let flagged = six.note.as_deref().is_some_and(|s| s.contains("s_7"));
    ensure(flagged, "the s_7 label is not flagged")?;
    Ok("24, 212, 3220, 61924; 1478528 at n=6 with the s_7 label flagged".into())
}

fn registry() -> Check {
    let t = Instant::now();
    let report = verify_registry(7).map_err(|e| e.to_string())?;
    within(t, Duration::from_secs(120))?;
    for (letter, id, list) in APPENDIX_CLASSES {
        let members: BTreeSet<BiVincularPattern> = id.members().into_iter().collect();
        ensure(list.iter().all(|s| members.contains(&pat(s))), format!("class {letter} is not under {id}"))?;
        let checked = report.checked.iter().find(|(i, _)| *i == id).map(|(_, c)| *c);
        ensure(checked == Some(members.len()), format!("{id}: checked {checked:?} of {}", members.len()))?;
    }
    ensure(report.is_clean(), format!("{} mismatches, first {:?}", report.mismatches.len(), report.mismatches.first()))?;
    let patterns: usize = report.checked.iter().map(|(_, c)| c).sum();
    Ok(format!("{} ids, {patterns} member patterns, 0 mismatches", report.checked.len()))
}

fn avoiders(n: usize, p: &BiVincularPattern) -> BTreeSet<Permutation> {
    permutations_of(n).filter(|q| avoids(q, p)).collect()
}

fn bijection_suite() -> Check {
    let t = Instant::now();
    let fishburn = [1usize, 2, 5, 15, 53, 217, 1014];
    for n in 1..=7 {
        let mut f_image = BTreeSet::new();
        let mut g_image = BTreeSet::new();
        for x in generate_ascent_sequences(n).map_err(|e| e.to_string())? {
            let pi = map_f(&x);
            ensure(map_f_inverse(&pi).ok() == Some(x.clone()), format!("f round trip at {x}"))?;
            f_image.insert(pi);
            let sigma = map_g_inverse(&x).map_err(|e| e.to_string())?;
            ensure(map_g(&sigma).ok() == Some(x.clone()), format!("g round trip at {x}"))?;
            g_image.insert(sigma);
        }
        ensure(f_image.len() == fishburn[n - 1] && f_image == avoiders(n, &pattern_231()), format!("f image n={n}"))?;
        ensure(g_image.len() == fishburn[n - 1] && g_image == avoiders(n, &pattern_132()), format!("g image n={n}"))?;
    }
    let shifted = [1usize, 2, 5, 16, 61, 271];
    let target = pat("321|X=1|Y=1");
    for n in 2..=7 {
        let restricted: Vec<_> =
            generate_ascent_sequences(n).map_err(|e| e.to_string())?.filter(|x| x.is_restricted()).collect();
        let image: BTreeSet<_> = restricted.iter().map(|x| map_h(x).map_err(|e| e.to_string())).collect::<Result<_, _>>()?;
        ensure(
            image.len() == restricted.len() && image.len() == shifted[n - 2] && image == avoiders(n - 1, &target),
            format!("h image n={n}"),
        )?;
    }
    within(t, Duration::from_secs(60))?;
    Ok(format!("f, g, h exhaustive for n <= 7 in {:.2?}", t.elapsed()))
}

fn lemma_0y_instances() -> Vec<(BiVincularPattern, BiVincularPattern)> {
    let excluded_x: [&[usize]; 4] = [&[1], &[3], &[0, 1], &[0, 3]];
    let excluded_y: [&[usize]; 2] = [&[0, 1], &[0, 3]];
    let mut out = Vec::new();
    for x in BoundarySet::all(3) {
        for mut y in BoundarySet::all(3).filter(|y| !y.contains(0)) {
            y.insert(0);
            let xs: Vec<usize> = x.iter().collect();
            let ys: Vec<usize> = y.iter().collect();
            if excluded_x.contains(&xs.as_slice()) && excluded_y.contains(&ys.as_slice()) {
                continue;
            }
            out.push((
                BiVincularPattern::from_parts("123", &xs, &ys).expect("valid"),
                BiVincularPattern::from_parts("132", &xs, &ys).expect("valid"),
            ));
        }
    }
    out
}

fn distribution_lemmas() -> Check {
    let t = Instant::now();
    let zero_y = lemma_0y_instances();
    ensure(zero_y.len() == 120, format!("{} instances", zero_y.len()))?;
    let xs: [&[usize]; 5] = [&[0], &[0, 2], &[0, 1, 2], &[0, 1, 3], &[0, 2, 3]];
    let mut one_to_three = Vec::new();
    for sigma in ["123", "132"] {
        for x in xs {
            one_to_three.push((
                BiVincularPattern::from_parts(sigma, x, &[1]).expect("valid"),
                BiVincularPattern::from_parts(sigma, x, &[3]).expect("valid"),
            ));
        }
    }
    for (p, q) in zero_y.iter().chain(&one_to_three) {
        ensure(distributions_equal(p, q, 6).map_err(|e| e.to_string())?, format!("{p} vs {q}"))?;
    }
    within(t, Duration::from_secs(120))?;
    Ok(format!("120 + {} instances at N=6 in {:.2?}", one_to_three.len(), t.elapsed()))
}

fn c10() -> Check {
    let mut c = [0u64; 9];
    for (n, slot) in c.iter_mut().enumerate().skip(2) {
        let (up, down) = c10_ingredients(n).map_err(|e| e.to_string())?;
        ensure(up == down, format!("c_{n}: {up} != {down}"))?;
        *slot = up;
    }
    let expected = [1u64, 2, 5, 18, 82, 459, 3041];
    for member in FormulaId::C10.members() {
        let a = avoidance_sequence(std::slice::from_ref(&member), 7).map_err(|e| e.to_string())?.terms;
        ensure(a == expected, format!("{member}: {a:?}"))?;
        for n in 2..7 {
            let next = c10_step(n, c[n], a[n - 1], a[n - 2]);
            ensure(next == a[n], format!("{member}: recursion gives {next} at n={}", n + 1))?;
        }
    }
    Ok("c_n(p1) = c_n(p2) for n <= 8; recursion gives 1,2,5,18,82,459,3041".into())
}

fn c09() -> Check {
    let brute = avoidance_sequence(&[FormulaId::C09.representative()], 8).map_err(|e| e.to_string())?.terms;
    ensure(brute[3] == 17 && brute[4] == 75, format!("{brute:?}"))?;
    for n in 1..=7 {
        let b = BigUint::from(brute[n - 1]);
        ensure(c09_sum(n) == b && c09_alternative(n) == b, format!("a_{n}"))?;
        // the excedence form lands one step ahead
        let knuth = (1..=n as u64 + 1).product::<u64>() - max_excedence_sum(n).map_err(|e| e.to_string())?;
        ensure(knuth == brute[n] && c09_sum(n + 1) == BigUint::from(knuth), format!("(n+1)! - excedence sum at n={n}"))?;
    }
    Ok("sum, alternative and (n+1)! - excedence sum agree for n <= 7".into())
}

fn c12() -> Check {
    let brute = avoidance_sequence(&[FormulaId::C12.representative()], 8).map_err(|e| e.to_string())?.terms;
    ensure(brute[..6] == [1, 2, 5, 19, 91, 531], format!("{brute:?}"))?;
    for n in 1..=8 {
        let b = BigUint::from(brute[n - 1]);
        let forms = [c12_recurrence(n), c12_alternating(n), c12_from_next_non_derangements(n), c12_from_non_derangements(n)];
        ensure(forms.iter().all(|v| *v == b), format!("n={n}: {forms:?} vs {b}"))?;
    }
    for n in 2..=7 {
        let a = c12_counts_by_max_position(n).map_err(|e| e.to_string())?;
        let prev = c12_counts_by_max_position(n - 1).map_err(|e| e.to_string())?;
        let first_two = (1..n as u64).product::<u64>();
        ensure(a[0] == first_two && a[1] == first_two, format!("a_{{{n},1}}, a_{{{n},2}}"))?;
        for k in 3..=n {
            ensure(a[k - 1] + prev[k - 2] == a[k - 2], format!("a_{{{n},{k}}}"))?;
        }
    }
    Ok("four forms match brute force for n <= 8; a_{n,k} recursion holds for n <= 7".into())
}

fn cli_output(jobs: &str, k: &str) -> Result<Vec<u8>, String> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let args = ["bivinc", "--jobs", jobs, "classify", "-k", k, "--horizon", "7", "--format", "json"];
    let code = bivincular_cli::run(args, &mut out, &mut err);
    ensure(code == 0, format!("exit {code}: {}", String::from_utf8_lossy(&err)))?;
    Ok(out)
}

fn determinism() -> Check {
    for k in ["2", "3"] {
        let one = cli_output("1", k)?;
        let eight = cli_output("8", k)?;
        ensure(one == eight, format!("k={k} output differs between --jobs 1 and --jobs 8"))?;
    }
    Ok("byte-identical for --jobs 1 and --jobs 8".into())
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("table 1 reproduction", table1),
        ("table 2 reproduction", table2),
        ("symmetry partition", symmetry),
        ("burnside counts", burnside),
        ("formula registry", registry),
        ("bijection suite", bijection_suite),
        ("distribution lemmas", distribution_lemmas),
        ("c10 ingredients and recursion", c10),
        ("c09 cross-identities", c09),
        ("c12 forms and position lemma", c12),
        ("determinism across --jobs", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
