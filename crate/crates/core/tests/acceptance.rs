//! The acceptance gate: eight numbered end-to-end criteria, each printing
//! one `criterion N: PASS/FAIL` line (run with `-- --nocapture` to see
//! them). Runtime expectations are asserted inside each criterion on a
//! pool of 4 worker threads.
//!
//! Criterion 7 is special: the claim it encodes — that the q=8 bundled
//! row, read over F_2, stays clean at extension degrees 1, 2 and 3 —
//! turned out to be false at degree 2, where exactly six members pick up
//! a rational line over F_4 (F_4 is not a subfield of F_8, so the q=8
//! verification says nothing about F_4-members). The criterion therefore
//! prints FAIL, and its body instead asserts the observed factorization
//! in full detail, so a change in either direction surfaces here.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use plane_cubics::classify::{
    census_reducible, classify, enumerate_normalized_cubics, has_linear_factor_over,
};
use plane_cubics::construct::{
    explicit_construction, galois_orbit_construction, monomial_family_check,
    ORBIT_SEARCH_BUDGET,
};
use plane_cubics::forms::text::cubic_from_str;
use plane_cubics::forms::CubicForm;
use plane_cubics::gf::tower::make_tower;
use plane_cubics::linsys::LinearSystem;
use plane_cubics::search::{census_count, extension_check, verify_witness_table, WITNESS_TABLE};

type Verdict = Result<String, String>;

fn budget(name: &str, elapsed: Duration, limit_s: u64) -> Result<(), String> {
    if elapsed > Duration::from_secs(limit_s) {
        Err(format!("{name} took {elapsed:.2?}, budget {limit_s}s"))
    } else {
        Ok(())
    }
}

/// 1. Every bundled witness row re-verifies: all (q⁴−1)/(q−1) members
/// geometrically irreducible, for q = 2..11; small rows fast, the whole
/// table within three minutes.
fn criterion_1() -> Verdict {
    let start = Instant::now();
    let rows = verify_witness_table().map_err(|e| format!("table failed: {e}"))?;
    let expected: [(u64, u64); 8] = [
        (2, 15),
        (3, 40),
        (4, 85),
        (5, 156),
        (7, 400),
        (8, 585),
        (9, 820),
        (11, 1464),
    ];
    if rows.len() != expected.len() {
        return Err(format!("expected 8 rows, got {}", rows.len()));
    }
    for (row, (q, members)) in rows.iter().zip(expected) {
        if row.q != q || row.members != members {
            return Err(format!(
                "row q={} scanned {} members, expected q={q} with {members}",
                row.q, row.members
            ));
        }
    }
    let small: Duration = rows.iter().filter(|r| r.q <= 5).map(|r| r.elapsed).sum();
    budget("rows q<=5", small, 5)?;
    let total = start.elapsed();
    budget("all rows", total, 180)?;
    Ok(format!(
        "8 rows, {} members all geometrically irreducible in {total:.2?}",
        rows.iter().map(|r| r.members).sum::<u64>()
    ))
}

/// 2. The deterministic construction works for every prime power q ≤ 13:
/// exactly one reducible member, the descended triple, split as three
/// conjugate lines.
fn criterion_2() -> Verdict {
    let start = Instant::now();
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13] {
        let tower = make_tower(q).map_err(|e| format!("tower q={q}: {e}"))?;
        let witness = explicit_construction(&tower);
        let scan = witness.scan();
        if scan.reducible.len() != 1 {
            return Err(format!("q={q}: {} reducible members", scan.reducible.len()));
        }
        let (idx, verdict) = &scan.reducible[0];
        if verdict.kind() != "FqIrreducibleGeomReducible" {
            return Err(format!("q={q}: verdict {}", verdict.kind()));
        }
        let base = tower.base();
        let member = witness.system().member_form(base, idx);
        let triple = witness
            .triple_product()
            .map_coeffs(base, |c| tower.cubic_to_base(c).expect("triple descends"));
        if member.normalize(base).coeffs() != triple.normalize(base).coeffs() {
            return Err(format!("q={q}: reducible member is not the triple"));
        }
    }
    let total = start.elapsed();
    budget("construction for q=2..13", total, 300)?;
    Ok(format!(
        "9 field sizes, one conjugate-triple member each, in {total:.2?}"
    ))
}

/// 3. The orbit construction succeeds within its candidate budget for
/// q = 2..5: through-space of vector dimension 4, no member with a
/// rational factor, and the one reducible member is the chord product.
fn criterion_3() -> Verdict {
    let start = Instant::now();
    let mut detail = Vec::new();
    for q in [2u64, 3, 4, 5] {
        let tower = make_tower(q).map_err(|e| format!("tower q={q}: {e}"))?;
        let witness = galois_orbit_construction(&tower, 0, ORBIT_SEARCH_BUDGET)
            .map_err(|e| format!("q={q}: {e}"))?;
        if witness.system().basis().len() != 4 {
            return Err(format!(
                "q={q}: dimension {}",
                witness.system().basis().len()
            ));
        }
        let scan = witness.scan();
        if scan.reducible.len() != 1
            || scan.reducible[0].1.kind() != "FqIrreducibleGeomReducible"
        {
            return Err(format!("q={q}: unexpected scan {:?}", scan.reducible));
        }
        // Re-multiply the chords independently of the construction's
        // own assertion.
        let top = tower.top();
        let [c0, c1, c2] = witness.chords();
        let product = CubicForm::from_lines(top, c0, c1, c2);
        let lifted = witness
            .reducible_member()
            .1
            .map_coeffs(top, |c| tower.base_to_top(c));
        if product.normalize(top).coeffs() != lifted.normalize(top).coeffs() {
            return Err(format!("q={q}: chord product mismatch"));
        }
        detail.push(format!("q={q} in {} candidates", witness.candidates()));
    }
    let total = start.elapsed();
    budget("orbit construction", total, 120)?;
    Ok(format!("{} ({total:.2?})", detail.join(", ")))
}

/// 4. The four-monomial family has zero counterexamples to
/// "geometrically reducible ⟹ a coefficient among a, b, c vanishes",
/// exhaustively over all q⁴−1 nonzero tuples for q = 2..7.
fn criterion_4() -> Verdict {
    let start = Instant::now();
    let mut checked = 0u64;
    for q in [2u64, 3, 4, 5, 7] {
        let tower = make_tower(q).map_err(|e| format!("tower q={q}: {e}"))?;
        // The check panics on any counterexample; Ok means none exist.
        let report = monomial_family_check(&tower).map_err(|e| format!("q={q}: {e}"))?;
        if report.tuples != q.pow(4) - 1 {
            return Err(format!("q={q}: counted {} tuples", report.tuples));
        }
        checked += report.tuples;
    }
    let total = start.elapsed();
    budget("family check", total, 60)?;
    Ok(format!("{checked} tuples, zero counterexamples ({total:.2?})"))
}

/// 5. The constructive census and the line-divisibility oracle agree on
/// geometric reducibility for every normalized cubic at q = 2 and 3.
fn criterion_5() -> Verdict {
    let start = Instant::now();
    for (q, total) in [(2u64, 1023u64), (3, 29524)] {
        let tower = make_tower(q).map_err(|e| format!("tower q={q}: {e}"))?;
        let base = tower.base();
        let census: std::collections::HashSet<[u64; 10]> = census_reducible(&tower)
            .map_err(|e| format!("census q={q}: {e}"))?
            .into_iter()
            .map(|f| f.coeffs().map(|c| c.code()))
            .collect();
        let mut scanned = 0u64;
        for f in enumerate_normalized_cubics(base) {
            scanned += 1;
            let in_census = census.contains(&f.coeffs().map(|c| c.code()));
            let reducible = !classify(&tower, &f).is_geom_irreducible();
            if in_census != reducible {
                return Err(format!(
                    "q={q}: oracles disagree on {:?}",
                    f.coeffs().map(|c| c.code())
                ));
            }
        }
        if scanned != total {
            return Err(format!("q={q}: {scanned} normalized cubics, expected {total}"));
        }
    }
    let total = start.elapsed();
    budget("oracle comparison", total, 120)?;
    Ok(format!("oracles agree on 1023 + 29524 forms ({total:.2?})"))
}

/// 6. Scanning lines over F_{q⁶} finds a linear factor exactly when
/// scanning over F_{q³} does, for every normalized cubic at q = 2.
fn criterion_6() -> Verdict {
    let start = Instant::now();
    let tower = make_tower(2).map_err(|e| format!("tower: {e}"))?;
    let base = tower.base();
    let cubic = tower.cubic();
    let top = tower.top();
    for f in enumerate_normalized_cubics(base) {
        let over_cubic = f.map_coeffs(cubic, |c| tower.base_to_cubic(c));
        let over_top = f.map_coeffs(top, |c| tower.base_to_top(c));
        if has_linear_factor_over(cubic, &over_cubic).is_some()
            != has_linear_factor_over(top, &over_top).is_some()
        {
            return Err(format!(
                "extensions disagree on {:?}",
                f.coeffs().map(|c| c.code())
            ));
        }
    }
    let total = start.elapsed();
    budget("degree-6 comparison", total, 60)?;
    Ok(format!("1023 forms agree across both extensions ({total:.2?})"))
}

/// 7. Claimed: the q=8 bundled row, read over F_2, stays clean at
/// k = 1, 2, 3 (a simultaneous witness for q = 2, 4, 8). Observed: true
/// at k = 1 and k = 3, false at k = 2 — six members acquire a rational
/// line over F_4. The body asserts the observed state exactly; the
/// criterion as stated fails.
fn criterion_7() -> Verdict {
    let start = Instant::now();
    let tower = make_tower(2).expect("base field");
    let base = tower.base();
    let row = WITNESS_TABLE.iter().find(|e| e.q == 8).expect("q=8 row");
    let basis: Vec<_> = row
        .forms
        .iter()
        .map(|s| cubic_from_str(base, s).expect("row parses over F_2"))
        .collect();
    let system = LinearSystem::new(base, basis, "q=8 row over F_2").expect("independent");

    let k1 = extension_check(base, &system, 1).expect("k=1 runs");
    assert!(k1.scan.reducible.is_empty(), "k=1 must stay clean");
    assert_eq!(k1.scan.member_count, 15);

    let k2 = extension_check(base, &system, 2).expect("k=2 runs");
    let observed: Vec<Vec<u64>> = k2
        .scan
        .reducible
        .iter()
        .map(|(idx, _)| idx.codes().to_vec())
        .collect();
    let pinned: Vec<Vec<u64>> = [
        [0u64, 1, 0, 2],
        [0, 1, 0, 3],
        [1, 1, 2, 3],
        [1, 1, 3, 2],
        [1, 2, 0, 0],
        [1, 3, 0, 0],
    ]
    .iter()
    .map(|a| a.to_vec())
    .collect();
    assert_eq!(observed, pinned, "the six degenerate F_4-members are pinned");
    assert!(
        k2.scan
            .reducible
            .iter()
            .all(|(_, v)| v.kind() == "FqReducible"),
        "each picks up a rational line over F_4"
    );

    let k3 = extension_check(base, &system, 3).expect("k=3 runs");
    assert!(k3.scan.reducible.is_empty(), "k=3 must stay clean");
    assert_eq!(k3.scan.member_count, 585);

    let total = start.elapsed();
    assert!(
        total <= Duration::from_secs(60),
        "three extension checks took {total:.2?}"
    );
    Err(format!(
        "k=1 and k=3 clean, but k=2 has six F_4-reducible members (three \
         conjugate pairs) — F_4 is not a subfield of F_8, so the q=8 row \
         does not cover q=4 ({total:.2?})"
    ))
}

/// 8. Census growth sanity: the reducible count grows like q⁷ between
/// q = 2 and q = 3, and the geometrically irreducible fraction rises
/// from q = 2 to q = 4.
fn criterion_8() -> Verdict {
    let start = Instant::now();
    let c2 = census_count(&make_tower(2).unwrap()).map_err(|e| format!("q=2: {e}"))?;
    let c3 = census_count(&make_tower(3).unwrap()).map_err(|e| format!("q=3: {e}"))?;
    let c4 = census_count(&make_tower(4).unwrap()).map_err(|e| format!("q=4: {e}"))?;

    let growth = (c3.reducible as f64 / c2.reducible as f64).ln() / (3f64 / 2f64).ln();
    if !(6.0..8.0).contains(&growth) {
        return Err(format!("log-ratio growth {growth:.3} outside (6, 8)"));
    }
    let f2 = c2.irreducible_fraction();
    let f4 = c4.irreducible_fraction();
    if f4 <= f2 {
        return Err(format!("irreducible fraction fell: {f2:.4} -> {f4:.4}"));
    }
    let total = start.elapsed();
    budget("census growth", total, 120)?;
    Ok(format!(
        "growth exponent {growth:.2}, irreducible fraction {f2:.4} -> {f4:.4} ({total:.2?})"
    ))
}

#[test]
fn acceptance_criteria() {
    // Criterion runtimes are stated for a 4-thread pool; pin it so the
    // measurements mean the same thing everywhere.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(4).build_global();

    let criteria: [(u32, &str, fn() -> Verdict); 8] = [
        (1, "bundled table re-verified", criterion_1),
        (2, "deterministic construction q<=13", criterion_2),
        (3, "orbit construction q<=5", criterion_3),
        (4, "four-monomial family exhaustive", criterion_4),
        (5, "census vs divisibility oracle", criterion_5),
        (6, "degree-6 extension adds nothing", criterion_6),
        (7, "q=8 row as simultaneous witness", criterion_7),
        (8, "census growth sanity", criterion_8),
    ];

    let mut passed = Vec::new();
    for (n, name, body) in criteria {
        let result = catch_unwind(AssertUnwindSafe(body));
        let ok = match result {
            Ok(Ok(detail)) => {
                println!("criterion {n}: PASS ({name}: {detail})");
                true
            }
            Ok(Err(detail)) => {
                println!("criterion {n}: FAIL ({name}: {detail})");
                false
            }
            Err(panic) => {
                let msg = panic
                    .downcast_ref::<String>()
                    .map(String::as_str)
                    .or_else(|| panic.downcast_ref::<&str>().copied())
                    .unwrap_or("panic");
                println!("criterion {n}: FAIL ({name}: panicked: {msg})");
                false
            }
        };
        passed.push(ok);
    }
    let summary = passed.iter().filter(|&&b| b).count();
    println!("acceptance: {summary}/8 criteria pass");

    // Criterion 7 records a genuine discrepancy (see its body, which
    // pins the observed factorization); every other criterion must
    // hold, and 7 flipping to PASS would also demand attention.
    let expected = [true, true, true, true, true, true, false, true];
    assert_eq!(
        passed, expected,
        "acceptance pattern changed — investigate the lines above"
    );
}
