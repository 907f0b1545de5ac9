//! Linear-system plumbing under realistic use: the parallel scan against
//! the member-by-member oracle, member enumeration, and the
//! through-orbit solver's contract.

use plane_cubics::classify::enumerate_normalized_cubics;
use plane_cubics::forms::{frobenius_point, enumerate_points, CubicForm, ProjectivePoint};
use plane_cubics::gf::tower::{make_tower, TowerCtx};
use plane_cubics::linsys::{
    cubics_through_points, find_any_reducible_member, independence_rank,
    reducible_members_naive, scan_reducible_members, LinearSystem,
};
use plane_cubics::Error;

/// Builds a handful of rank-4 systems deterministically by striding
/// through the normalized cubics at coprime steps.
fn strided_systems(tower: &TowerCtx, how_many: usize) -> Vec<LinearSystem> {
    let base = tower.base();
    let all: Vec<CubicForm> = enumerate_normalized_cubics(base).collect();
    let mut out = Vec::new();
    let mut start = 0usize;
    while out.len() < how_many {
        let picks: Vec<CubicForm> = [0usize, 7, 113, 311]
            .iter()
            .map(|&off| all[(start + off) % all.len()])
            .collect();
        start += 37;
        if independence_rank(base, &picks) == 4 {
            let label = format!("strided {} q={}", out.len(), tower.q());
            out.push(LinearSystem::new(base, picks, label).unwrap());
        }
    }
    out
}

/// The parallel line scan returns exactly what classifying every member
/// one by one returns — same indices, same verdicts, same order.
#[test]
fn scan_matches_the_member_by_member_oracle() {
    for q in [2u64, 3] {
        let tower = make_tower(q).unwrap();
        for system in strided_systems(&tower, 4) {
            let scan = scan_reducible_members(&tower, &system);
            let naive = reducible_members_naive(&tower, &system);
            assert_eq!(scan.reducible.len(), naive.len(), "{}", system.label());
            for ((si, sv), (ni, nv)) in scan.reducible.iter().zip(&naive) {
                assert_eq!(si, ni, "{}", system.label());
                assert_eq!(sv, nv, "{}", system.label());
            }
            assert_eq!(scan.member_count, (q.pow(4) - 1) / (q - 1));
        }
    }
}

/// `find_any_reducible_member` is the early-exit face of the same scan:
/// Some exactly when the full scan is nonempty.
#[test]
fn find_any_agrees_with_the_full_scan() {
    let tower = make_tower(2).unwrap();
    for system in strided_systems(&tower, 6) {
        let scan = scan_reducible_members(&tower, &system);
        match find_any_reducible_member(&tower, &system) {
            Some(idx) => assert!(
                scan.reducible.iter().any(|(i, _)| *i == idx),
                "reported member must be in the scan for {}",
                system.label()
            ),
            None => assert!(scan.reducible.is_empty(), "{}", system.label()),
        }
    }
}

/// Member enumeration walks each projective class exactly once and
/// matches the closed-form count.
#[test]
fn member_enumeration_is_exact() {
    let tower = make_tower(3).unwrap();
    let base = tower.base();
    let system = &strided_systems(&tower, 1)[0];
    let expected = (3u64.pow(4) - 1) / 2;
    assert_eq!(system.member_count(base), expected);

    let mut seen_indices = std::collections::HashSet::new();
    let mut seen_forms = std::collections::HashSet::new();
    let mut count = 0u64;
    for (idx, form) in system.enumerate_members(base) {
        assert!(seen_indices.insert(idx.codes().to_vec()), "repeated index");
        assert!(
            seen_forms.insert(form.normalize(base).coeffs().map(|c| c.code())),
            "two indices produced the same projective member"
        );
        assert_eq!(
            system.member_form(base, &idx).coeffs(),
            form.coeffs(),
            "member_form agrees with enumeration"
        );
        count += 1;
    }
    assert_eq!(count, expected);
}

/// Finds the first point of P²(F_{q⁶}) whose Frobenius orbit has full
/// size 6, in enumeration order.
fn degree_six_orbit(tower: &TowerCtx) -> [ProjectivePoint; 6] {
    let top = tower.top();
    for p in enumerate_points(top) {
        let mut orbit = vec![p];
        for i in 0..5 {
            orbit.push(frobenius_point(tower, &orbit[i]));
        }
        let distinct: std::collections::HashSet<_> = orbit
            .iter()
            .map(|p| p.coords().map(|c| c.code()))
            .collect();
        if distinct.len() == 6 {
            return orbit.try_into().unwrap();
        }
    }
    unreachable!("P²(F_{{q⁶}}) always has degree-6 points");
}

/// The through-orbit solver returns F_q-cubics that really vanish on the
/// whole orbit, and rejects malformed input.
#[test]
fn through_orbit_systems_vanish_on_the_orbit() {
    for q in [2u64, 3] {
        let tower = make_tower(q).unwrap();
        let base = tower.base();
        let top = tower.top();
        let orbit = degree_six_orbit(&tower);

        let system = cubics_through_points(&tower, &orbit).unwrap();
        assert!(system.basis().len() >= 4, "six conditions leave dimension >= 4");
        for f in system.basis() {
            let lifted = f.map_coeffs(top, |c| tower.base_to_top(c));
            for p in &orbit {
                assert!(lifted.vanishes_at(top, p), "q={q}: {}", system.label());
            }
        }

        // Five points are not an orbit.
        match cubics_through_points(&tower, &orbit[..5]) {
            Err(Error::InvalidArgument(_)) => {}
            other => panic!("expected InvalidArgument, got {other:?}"),
        }
        // Neither are six points out of Frobenius order.
        let mut shuffled = orbit.clone();
        shuffled.swap(1, 2);
        match cubics_through_points(&tower, &shuffled) {
            Err(Error::InvalidArgument(_)) => {}
            other => panic!("expected InvalidArgument, got {other:?}"),
        }
    }
}

/// Dependent bases are rejected with the measured rank.
#[test]
fn dependent_bases_are_rejected() {
    let tower = make_tower(2).unwrap();
    let base = tower.base();
    let all: Vec<CubicForm> = enumerate_normalized_cubics(base).take(3).collect();
    let sum = all[0].add(base, &all[1]);
    let dependent = vec![all[0], all[1], all[2], sum.add(base, &all[2])];
    match LinearSystem::new(base, dependent, "dependent") {
        Err(Error::DependentBasis { rank, expected }) => {
            assert_eq!((rank, expected), (3, 4));
        }
        other => panic!("expected DependentBasis, got {other:?}"),
    }
}
