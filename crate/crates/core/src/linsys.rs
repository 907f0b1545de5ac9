//! Linear systems of cubics over F_q and the per-line kernel scan.
//!
//! The scan is the performance core of the crate. Instead of testing each
//! of the (q^{k+1}-1)/(q-1) members against every line of P²(F_{q³}), it
//! walks the lines once. For a fixed line, "the member Σ aⱼFⱼ is
//! divisible by the line" is an F_q-linear condition on (a₀..a_k):
//! restrict each basis form to the line (a binary cubic with four
//! F_{q³} coefficients), split every coefficient into its three F_q
//! coordinates, and collect the 12×(k+1) matrix over F_q. The kernel
//! vectors are exactly the members the line divides, so the union over
//! all q⁶+q³+1 lines — deduplicated projectively — is the set of
//! geometrically reducible members (every geometrically reducible cubic
//! is divisible by some F_{q³}-line; see the classify module docs).
//! Workers process disjoint line ranges and only the final merge is
//! shared, so the scan parallelizes without locks.

use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::classify::{classify, normalized_vectors, CubicVerdict};
use crate::forms::{
    cubic_monomial_values, frobenius_point, line_at, line_count, monomial_restrictions,
    CubicForm, ProjectivePoint,
};
use crate::gf::tower::TowerCtx;
use crate::gf::{CtxId, FieldCtx, FieldElem};
use crate::linalg::Mat;
use crate::{Error, Result};

/// Canonical coordinates of a member of a linear system: a projective
/// coefficient tuple with the first nonzero entry scaled to 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MemberIndex {
    a: Vec<u64>, // element codes, canonical representative
}

impl MemberIndex {
    /// Canonicalizes (and rejects the zero tuple).
    pub fn new(ctx: &FieldCtx, coeffs: &[FieldElem]) -> MemberIndex {
        let lead = coeffs
            .iter()
            .find(|c| !c.is_zero())
            .expect("the zero tuple indexes no member");
        let inv = ctx.inv(*lead);
        MemberIndex {
            a: coeffs.iter().map(|&c| ctx.mul(c, inv).code()).collect(),
        }
    }

    pub fn coeffs(&self, ctx: &FieldCtx) -> Vec<FieldElem> {
        self.a.iter().map(|&c| ctx.from_code(c)).collect()
    }

    /// Element codes of the canonical representative.
    pub fn codes(&self) -> &[u64] {
        &self.a
    }
}

/// A linear system spanned by independent cubic forms over F_q.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    ctx: CtxId,
    basis: Vec<CubicForm>,
    label: String,
}

/// Rank of the n×10 coefficient matrix of the given forms.
pub fn independence_rank(ctx: &FieldCtx, forms: &[CubicForm]) -> usize {
    let rows: Vec<Vec<FieldElem>> = forms.iter().map(|f| f.coeffs().to_vec()).collect();
    Mat::from_rows(&rows).rank(ctx)
}

impl LinearSystem {
    /// Validates independence: the basis must have full rank.
    pub fn new(ctx: &FieldCtx, basis: Vec<CubicForm>, label: impl Into<String>) -> Result<LinearSystem> {
        assert!(!basis.is_empty(), "empty basis");
        for f in &basis {
            assert_eq!(f.ctx(), ctx.id(), "basis form from the wrong field");
        }
        let rank = independence_rank(ctx, &basis);
        if rank != basis.len() {
            return Err(Error::DependentBasis {
                rank,
                expected: basis.len(),
            });
        }
        Ok(LinearSystem {
            ctx: ctx.id(),
            basis,
            label: label.into(),
        })
    }

    pub fn ctx(&self) -> CtxId {
        self.ctx
    }

    pub fn basis(&self) -> &[CubicForm] {
        &self.basis
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Projective dimension: k for a basis of k+1 forms.
    pub fn dim(&self) -> usize {
        self.basis.len() - 1
    }

    /// (q^{k+1} - 1)/(q - 1).
    pub fn member_count(&self, ctx: &FieldCtx) -> u64 {
        let q = ctx.size();
        (q.pow(self.basis.len() as u32) - 1) / (q - 1)
    }

    /// The member with the given canonical coefficients.
    pub fn member_form(&self, ctx: &FieldCtx, idx: &MemberIndex) -> CubicForm {
        assert_eq!(self.ctx, ctx.id(), "system from the wrong field");
        assert_eq!(idx.a.len(), self.basis.len(), "index length mismatch");
        let mut acc = CubicForm::zero(ctx);
        for (j, &code) in idx.a.iter().enumerate() {
            if code != 0 {
                acc = acc.add(ctx, &self.basis[j].scale(ctx, ctx.from_code(code)));
            }
        }
        acc
    }

    /// Every member exactly once: one canonical index per projective
    /// class, paired with its combined form.
    pub fn enumerate_members<'a>(
        &'a self,
        ctx: &'a FieldCtx,
    ) -> impl Iterator<Item = (MemberIndex, CubicForm)> + 'a {
        assert_eq!(self.ctx, ctx.id(), "system from the wrong field");
        normalized_vectors(ctx, self.basis.len()).map(move |v| {
            let idx = MemberIndex {
                a: v.iter().map(|c| c.code()).collect(),
            };
            let form = self.member_form(ctx, &idx);
            (idx, form)
        })
    }
}

/// Everything the scan learned about one system.
#[derive(Clone, Debug)]
pub struct ScanReport {
    pub label: String,
    pub member_count: u64,
    /// Every member that is not geometrically irreducible, with its full
    /// verdict, sorted by canonical index.
    pub reducible: Vec<(MemberIndex, CubicVerdict)>,
    pub lines_scanned: u64,
    pub elapsed: Duration,
}

/// Basis forms embedded into F_{q³}, as raw coefficient codes.
fn embed_basis_codes(tower: &TowerCtx, system: &LinearSystem) -> Vec<[u64; 10]> {
    system
        .basis()
        .iter()
        .map(|f| f.coeffs().map(|c| tower.base_to_cubic(c).code()))
        .collect()
}

/// Kernel of the divisibility condition for one line: canonical member
/// tuples (as code vectors) of every member divisible by line `idx`.
fn line_kernel_members(
    tower: &TowerCtx,
    basis_codes: &[[u64; 10]],
    idx: u64,
    out: &mut Vec<Vec<u64>>,
) {
    let base = tower.base();
    let cubic = tower.cubic();
    let n = basis_codes.len();
    let line = line_at(cubic, idx);
    let a = line.coeffs().map(|c| c.code());
    let (pa, pb) = crate::forms::line_kernel_codes(cubic, a);
    let table = monomial_restrictions(cubic, pa, pb);

    // 12×n matrix over F_q: rows = 4 binary-cubic coefficients × 3 base
    // coordinates, columns = basis forms
    let mut rows = vec![vec![base.zero(); n]; 12];
    let mut coords = [0u64; 3];
    for (j, codes) in basis_codes.iter().enumerate() {
        for d in 0..4 {
            let mut acc = 0u64;
            for i in 0..10 {
                if codes[i] != 0 && table[i][d] != 0 {
                    acc = cubic.add_code(acc, cubic.mul_code(codes[i], table[i][d]));
                }
            }
            tower.cubic_decomp().decompose_codes(cubic, acc, &mut coords);
            for (r, &coord) in coords.iter().enumerate() {
                rows[3 * d + r][j] = base.from_code(coord);
            }
        }
    }
    let kernel = Mat::from_rows(&rows).nullspace(base);
    if kernel.is_empty() {
        return;
    }
    // every projective class in the kernel span is a divisible member
    for combo in normalized_vectors(base, kernel.len()) {
        let mut member = vec![base.zero(); n];
        for (i, c) in combo.iter().enumerate() {
            if !c.is_zero() {
                for j in 0..n {
                    member[j] = base.add(member[j], base.mul(*c, kernel[i][j]));
                }
            }
        }
        out.push(MemberIndex::new(base, &member).a);
    }
}

/// Scans every line of P²(F_{q³}) and reports each member of the system
/// that is not geometrically irreducible, with its verdict. The heavy
/// part parallelizes over disjoint line ranges on the current rayon pool.
pub fn scan_reducible_members(tower: &TowerCtx, system: &LinearSystem) -> ScanReport {
    assert_eq!(
        system.ctx(),
        tower.base().id(),
        "system and tower must share the base field"
    );
    let start = Instant::now();
    let basis_codes = embed_basis_codes(tower, system);
    let total = line_count(tower.cubic().size());
    let chunk: u64 = 4096;
    let n_chunks = total.div_ceil(chunk);

    let mut hits: Vec<Vec<u64>> = (0..n_chunks)
        .into_par_iter()
        .map(|ci| {
            let lo = ci * chunk;
            let hi = (lo + chunk).min(total);
            let mut local = Vec::new();
            for idx in lo..hi {
                line_kernel_members(tower, &basis_codes, idx, &mut local);
            }
            local
        })
        .reduce(Vec::new, |mut acc, mut part| {
            acc.append(&mut part);
            acc
        });

    hits.sort_unstable();
    hits.dedup();

    let base = tower.base();
    let reducible: Vec<(MemberIndex, CubicVerdict)> = hits
        .into_iter()
        .map(|codes| {
            let idx = MemberIndex { a: codes };
            let form = system.member_form(base, &idx);
            let verdict = classify(tower, &form);
            debug_assert!(!verdict.is_geom_irreducible());
            (idx, verdict)
        })
        .collect();

    ScanReport {
        label: system.label().to_string(),
        member_count: system.member_count(base),
        reducible,
        lines_scanned: total,
        elapsed: start.elapsed(),
    }
}

/// Early-abort variant: `Some(member)` as soon as any line divides any
/// member, `None` if every member is geometrically irreducible. Which
/// member is returned is unspecified under parallel execution (whether
/// one exists is not). This is the hot path of the random search.
pub fn find_any_reducible_member(
    tower: &TowerCtx,
    system: &LinearSystem,
) -> Option<MemberIndex> {
    assert_eq!(
        system.ctx(),
        tower.base().id(),
        "system and tower must share the base field"
    );
    let basis_codes = embed_basis_codes(tower, system);
    let total = line_count(tower.cubic().size());
    let chunk: u64 = 4096;
    let n_chunks = total.div_ceil(chunk);
    let stop = AtomicBool::new(false);

    let found = (0..n_chunks)
        .into_par_iter()
        .filter_map(|ci| {
            if stop.load(Ordering::Relaxed) {
                return None;
            }
            let lo = ci * chunk;
            let hi = (lo + chunk).min(total);
            let mut local = Vec::new();
            for idx in lo..hi {
                line_kernel_members(tower, &basis_codes, idx, &mut local);
                if !local.is_empty() {
                    stop.store(true, Ordering::Relaxed);
                    return Some(local.swap_remove(0));
                }
            }
            None
        })
        .find_any(|_| true);

    found.map(|codes| MemberIndex { a: codes })
}

/// Exhaustive reference oracle: classify every member directly. Only
/// sensible for small q; the scan must agree with this exactly. Sorted by
/// canonical index like [`scan_reducible_members`].
pub fn reducible_members_naive(
    tower: &TowerCtx,
    system: &LinearSystem,
) -> Vec<(MemberIndex, CubicVerdict)> {
    let base = tower.base();
    let mut out: Vec<(MemberIndex, CubicVerdict)> = system
        .enumerate_members(base)
        .filter_map(|(idx, form)| {
            let verdict = classify(tower, &form);
            if verdict.is_geom_irreducible() {
                None
            } else {
                Some((idx, verdict))
            }
        })
        .collect();
    out.sort_by(|(a, _), (b, _)| a.cmp(b));
    out
}

/// The F_q-cubics vanishing on a full degree-6 Frobenius orbit.
///
/// The orbit must be passed in Frobenius order (point i+1 is the image of
/// point i) with all six points distinct; this is checked. Vanishing is
/// imposed at one representative only: an F_q-cubic through P also passes
/// through every conjugate of P, so the single point already cuts out the
/// full through-orbit space — as e′ = 6 linear conditions over F_q, one
/// per base coordinate of the F_{q⁶} value. The kernel dimension is
/// therefore at least 10 - 6 = 4; the basis returned is exact, and every
/// basis form is re-verified to vanish at all six points.
pub fn cubics_through_points(
    tower: &TowerCtx,
    points: &[ProjectivePoint],
) -> Result<LinearSystem> {
    let top = tower.top();
    let base = tower.base();
    if points.len() != 6 {
        return Err(Error::InvalidArgument(format!(
            "expected a degree-6 orbit, got {} points",
            points.len()
        )));
    }
    for p in points {
        assert_eq!(p.ctx(), top.id(), "orbit points live in the top field");
    }
    for i in 0..6 {
        if frobenius_point(tower, &points[i]) != points[(i + 1) % 6] {
            return Err(Error::InvalidArgument(
                "points are not a Frobenius orbit in order".into(),
            ));
        }
    }
    for i in 0..6 {
        for j in i + 1..6 {
            if points[i] == points[j] {
                return Err(Error::InvalidArgument(
                    "orbit has fewer than 6 distinct points".into(),
                ));
            }
        }
    }

    let values = cubic_monomial_values(top, &points[0]);
    let e = 6 * tower.e() as usize;
    let mut rows = vec![vec![base.zero(); 10]; e];
    for (i, &v) in values.iter().enumerate() {
        for (r, &coord) in tower.top_coords(v).iter().enumerate() {
            rows[r][i] = coord;
        }
    }
    let kernel = Mat::from_rows(&rows).nullspace(base);
    assert!(
        kernel.len() >= 4,
        "a single point imposes at most 6 conditions; dimension {} < 4 is impossible",
        kernel.len()
    );

    let basis: Vec<CubicForm> = kernel
        .iter()
        .map(|v| {
            let mut c = [base.zero(); 10];
            c.copy_from_slice(v);
            CubicForm::new(base, c)
        })
        .collect();

    // re-verify the defining property at every orbit point
    for f in &basis {
        let up = f.map_coeffs(top, |c| tower.base_to_top(c));
        for p in points {
            assert!(
                up.vanishes_at(top, p),
                "through-orbit basis form fails to vanish on the orbit"
            );
        }
    }

    LinearSystem::new(
        base,
        basis,
        format!("through-orbit q={}", tower.q()),
    )
}
