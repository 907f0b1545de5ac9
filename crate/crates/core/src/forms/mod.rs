//! Homogeneous forms in x, y, z: linear forms, conics, cubics, points of
//! the projective plane, and the restriction of a cubic to a line.
//!
//! Coefficients sit in a fixed canonical monomial order so that forms can
//! be moved between the in-memory, positional, and human-readable
//! representations with no reordering step anywhere:
//!
//! ```text
//! c0*x^3 + c1*y^3 + c2*z^3 + c3*x^2*y + c4*x*y^2
//!        + c5*y^2*z + c6*y*z^2 + c7*z^2*x + c8*z*x^2 + c9*x*y*z
//! ```
//!
//! All types store raw coefficient vectors; `normalize` produces the
//! canonical projective representative (first nonzero entry scaled to 1)
//! when equality up to scalar is wanted. Values are immutable and every
//! operation is a pure function of its inputs, so any parallel schedule
//! is safe.

pub mod text;

use crate::gf::{CtxId, FieldCtx, FieldElem};
use crate::gf::tower::TowerCtx;
use crate::{Error, Result};

/// Exponents of the ten cubic monomials in canonical coefficient order.
pub const CUBIC_MONOMIALS: [[u32; 3]; 10] = [
    [3, 0, 0], // x^3
    [0, 3, 0], // y^3
    [0, 0, 3], // z^3
    [2, 1, 0], // x^2 y
    [1, 2, 0], // x y^2
    [0, 2, 1], // y^2 z
    [0, 1, 2], // y z^2
    [1, 0, 2], // z^2 x
    [2, 0, 1], // z x^2
    [1, 1, 1], // x y z
];

/// Exponents of the six conic monomials in coefficient order
/// b0 x^2 + b1 y^2 + b2 z^2 + b3 xy + b4 yz + b5 zx.
pub const CONIC_MONOMIALS: [[u32; 3]; 6] = [
    [2, 0, 0],
    [0, 2, 0],
    [0, 0, 2],
    [1, 1, 0],
    [0, 1, 1],
    [1, 0, 1],
];

/// Index of a degree-3 exponent triple in [`CUBIC_MONOMIALS`].
#[inline]
pub(crate) fn cubic_slot(e: [u32; 3]) -> usize {
    match e {
        [3, 0, 0] => 0,
        [0, 3, 0] => 1,
        [0, 0, 3] => 2,
        [2, 1, 0] => 3,
        [1, 2, 0] => 4,
        [0, 2, 1] => 5,
        [0, 1, 2] => 6,
        [1, 0, 2] => 7,
        [2, 0, 1] => 8,
        [1, 1, 1] => 9,
        _ => panic!("not a degree-3 exponent triple: {e:?}"),
    }
}

/// Index of a degree-2 exponent triple in [`CONIC_MONOMIALS`].
#[inline]
fn conic_slot(e: [u32; 3]) -> usize {
    match e {
        [2, 0, 0] => 0,
        [0, 2, 0] => 1,
        [0, 0, 2] => 2,
        [1, 1, 0] => 3,
        [0, 1, 1] => 4,
        [1, 0, 1] => 5,
        _ => panic!("not a degree-2 exponent triple: {e:?}"),
    }
}

/// a0 x + a1 y + a2 z.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LinearForm {
    ctx: CtxId,
    a: [FieldElem; 3],
}

/// b0 x^2 + b1 y^2 + b2 z^2 + b3 xy + b4 yz + b5 zx.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ConicForm {
    ctx: CtxId,
    b: [FieldElem; 6],
}

/// A cubic form in the canonical ten-coefficient order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CubicForm {
    ctx: CtxId,
    c: [FieldElem; 10],
}

/// A point of P² with the first nonzero coordinate scaled to 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ProjectivePoint {
    ctx: CtxId,
    xyz: [FieldElem; 3],
}

/// The restriction of a cubic to a parametrized line: a homogeneous cubic
/// c0 s^3 + c1 s^2 t + c2 s t^2 + c3 t^3 in the parameters (s, t).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BinaryCubic {
    ctx: CtxId,
    c: [FieldElem; 4],
}

impl LinearForm {
    pub fn new(ctx: &FieldCtx, a: [FieldElem; 3]) -> LinearForm {
        for v in &a {
            assert_eq!(v.ctx(), ctx.id(), "coefficient from the wrong field");
        }
        LinearForm { ctx: ctx.id(), a }
    }

    pub fn ctx(&self) -> CtxId {
        self.ctx
    }

    pub fn coeffs(&self) -> [FieldElem; 3] {
        self.a
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|c| c.is_zero())
    }

    /// Canonical projective representative; `None` for the zero form.
    pub fn try_normalize(&self, ctx: &FieldCtx) -> Option<LinearForm> {
        normalize_slice(ctx, self.ctx, &self.a).map(|a| LinearForm {
            ctx: self.ctx,
            a: [a[0], a[1], a[2]],
        })
    }

    pub fn normalize(&self, ctx: &FieldCtx) -> LinearForm {
        self.try_normalize(ctx).expect("normalize of the zero form")
    }

    /// The value a0 x + a1 y + a2 z at the point.
    pub fn evaluate(&self, ctx: &FieldCtx, p: &ProjectivePoint) -> FieldElem {
        assert_eq!(self.ctx, ctx.id(), "form from the wrong field");
        assert_eq!(p.ctx, ctx.id(), "point from the wrong field");
        let mut acc = ctx.zero();
        for i in 0..3 {
            acc = ctx.add(acc, ctx.mul(self.a[i], p.xyz[i]));
        }
        acc
    }

    /// Product with a conic, expanded into canonical cubic order.
    pub fn times_conic(&self, ctx: &FieldCtx, q: &ConicForm) -> CubicForm {
        assert_eq!(self.ctx, ctx.id(), "form from the wrong field");
        assert_eq!(q.ctx, ctx.id(), "conic from the wrong field");
        let mut c = [ctx.zero(); 10];
        for (i, le) in LINEAR_MONOMIALS.iter().enumerate() {
            if self.a[i].is_zero() {
                continue;
            }
            for (j, qe) in CONIC_MONOMIALS.iter().enumerate() {
                if q.b[j].is_zero() {
                    continue;
                }
                let e = [le[0] + qe[0], le[1] + qe[1], le[2] + qe[2]];
                let slot = cubic_slot(e);
                c[slot] = ctx.add(c[slot], ctx.mul(self.a[i], q.b[j]));
            }
        }
        CubicForm { ctx: self.ctx, c }
    }

    /// Product with another linear form, expanded into conic order.
    pub fn times_linear(&self, ctx: &FieldCtx, other: &LinearForm) -> ConicForm {
        assert_eq!(self.ctx, ctx.id(), "form from the wrong field");
        assert_eq!(other.ctx, ctx.id(), "form from the wrong field");
        let mut b = [ctx.zero(); 6];
        for (i, le) in LINEAR_MONOMIALS.iter().enumerate() {
            if self.a[i].is_zero() {
                continue;
            }
            for (j, me) in LINEAR_MONOMIALS.iter().enumerate() {
                if other.a[j].is_zero() {
                    continue;
                }
                let e = [le[0] + me[0], le[1] + me[1], le[2] + me[2]];
                let slot = conic_slot(e);
                b[slot] = ctx.add(b[slot], ctx.mul(self.a[i], other.a[j]));
            }
        }
        ConicForm { ctx: self.ctx, b }
    }

    /// Coefficient-wise image under a field map (e.g. an embedding or the
    /// Frobenius); `f` must be a ring homomorphism for the result to mean
    /// anything.
    pub fn map_coeffs(
        &self,
        target: &FieldCtx,
        mut f: impl FnMut(FieldElem) -> FieldElem,
    ) -> LinearForm {
        let a = self.a.map(&mut f);
        LinearForm::new(target, a)
    }
}

const LINEAR_MONOMIALS: [[u32; 3]; 3] = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];

impl ConicForm {
    pub fn new(ctx: &FieldCtx, b: [FieldElem; 6]) -> ConicForm {
        for v in &b {
            assert_eq!(v.ctx(), ctx.id(), "coefficient from the wrong field");
        }
        ConicForm { ctx: ctx.id(), b }
    }

    pub fn ctx(&self) -> CtxId {
        self.ctx
    }

    pub fn coeffs(&self) -> [FieldElem; 6] {
        self.b
    }

    pub fn is_zero(&self) -> bool {
        self.b.iter().all(|c| c.is_zero())
    }

    pub fn try_normalize(&self, ctx: &FieldCtx) -> Option<ConicForm> {
        normalize_slice(ctx, self.ctx, &self.b).map(|b| ConicForm {
            ctx: self.ctx,
            b: [b[0], b[1], b[2], b[3], b[4], b[5]],
        })
    }

    pub fn normalize(&self, ctx: &FieldCtx) -> ConicForm {
        self.try_normalize(ctx).expect("normalize of the zero form")
    }

    pub fn evaluate(&self, ctx: &FieldCtx, p: &ProjectivePoint) -> FieldElem {
        assert_eq!(self.ctx, ctx.id(), "form from the wrong field");
        let vals = conic_monomial_values(ctx, p);
        let mut acc = ctx.zero();
        for i in 0..6 {
            acc = ctx.add(acc, ctx.mul(self.b[i], vals[i]));
        }
        acc
    }
}

/// The six conic monomials evaluated at a point, in coefficient order.
pub fn conic_monomial_values(ctx: &FieldCtx, p: &ProjectivePoint) -> [FieldElem; 6] {
    assert_eq!(p.ctx, ctx.id(), "point from the wrong field");
    let [x, y, z] = p.xyz;
    [
        ctx.mul(x, x),
        ctx.mul(y, y),
        ctx.mul(z, z),
        ctx.mul(x, y),
        ctx.mul(y, z),
        ctx.mul(z, x),
    ]
}

/// The ten cubic monomials evaluated at a point, in coefficient order.
pub fn cubic_monomial_values(ctx: &FieldCtx, p: &ProjectivePoint) -> [FieldElem; 10] {
    assert_eq!(p.ctx, ctx.id(), "point from the wrong field");
    let [x, y, z] = p.xyz;
    let (x2, y2, z2) = (ctx.mul(x, x), ctx.mul(y, y), ctx.mul(z, z));
    [
        ctx.mul(x2, x),
        ctx.mul(y2, y),
        ctx.mul(z2, z),
        ctx.mul(x2, y),
        ctx.mul(x, y2),
        ctx.mul(y2, z),
        ctx.mul(y, z2),
        ctx.mul(x, z2),
        ctx.mul(x2, z),
        ctx.mul(ctx.mul(x, y), z),
    ]
}

impl CubicForm {
    pub fn new(ctx: &FieldCtx, c: [FieldElem; 10]) -> CubicForm {
        for v in &c {
            assert_eq!(v.ctx(), ctx.id(), "coefficient from the wrong field");
        }
        CubicForm { ctx: ctx.id(), c }
    }

    pub fn zero(ctx: &FieldCtx) -> CubicForm {
        CubicForm {
            ctx: ctx.id(),
            c: [ctx.zero(); 10],
        }
    }

    /// The product of three linear forms, expanded.
    pub fn from_lines(
        ctx: &FieldCtx,
        l0: &LinearForm,
        l1: &LinearForm,
        l2: &LinearForm,
    ) -> CubicForm {
        l0.times_conic(ctx, &l1.times_linear(ctx, l2))
    }

    pub fn ctx(&self) -> CtxId {
        self.ctx
    }

    pub fn coeffs(&self) -> [FieldElem; 10] {
        self.c
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.c[i]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, ctx: &FieldCtx, other: &CubicForm) -> CubicForm {
        assert_eq!(self.ctx, ctx.id(), "form from the wrong field");
        assert_eq!(other.ctx, ctx.id(), "form from the wrong field");
        let mut c = [ctx.zero(); 10];
        for i in 0..10 {
            c[i] = ctx.add(self.c[i], other.c[i]);
        }
        CubicForm { ctx: self.ctx, c }
    }

    pub fn scale(&self, ctx: &FieldCtx, lambda: FieldElem) -> CubicForm {
        assert_eq!(self.ctx, ctx.id(), "form from the wrong field");
        let c = self.c.map(|v| ctx.mul(v, lambda));
        CubicForm { ctx: self.ctx, c }
    }

    /// The value at a fixed affine representative of P. Whether the value
    /// is zero does not depend on the representative, and that predicate
    /// is what callers should consume. Coefficients and coordinates must
    /// live in the same context; embed the form first (`map_coeffs`) to
    /// evaluate at a point of an extension.
    pub fn evaluate(&self, ctx: &FieldCtx, p: &ProjectivePoint) -> FieldElem {
        assert_eq!(self.ctx, ctx.id(), "form from the wrong field");
        let vals = cubic_monomial_values(ctx, p);
        let mut acc = ctx.zero();
        for i in 0..10 {
            acc = ctx.add(acc, ctx.mul(self.c[i], vals[i]));
        }
        acc
    }

    pub fn vanishes_at(&self, ctx: &FieldCtx, p: &ProjectivePoint) -> bool {
        self.evaluate(ctx, p).is_zero()
    }

    /// Canonical projective representative; `None` for the zero form.
    pub fn try_normalize(&self, ctx: &FieldCtx) -> Option<CubicForm> {
        normalize_slice(ctx, self.ctx, &self.c).map(|c| {
            let mut arr = [ctx.zero(); 10];
            arr.copy_from_slice(&c);
            CubicForm { ctx: self.ctx, c: arr }
        })
    }

    pub fn normalize(&self, ctx: &FieldCtx) -> CubicForm {
        self.try_normalize(ctx).expect("normalize of the zero form")
    }

    /// The composite F(Mv): coordinates are replaced by the rows' linear
    /// forms, x -> m00 x + m01 y + m02 z and so on, and the result is
    /// re-expanded in canonical order. M must be invertible — a singular
    /// substitution would not be a change of coordinates.
    pub fn substitute(&self, ctx: &FieldCtx, m: &[[FieldElem; 3]; 3]) -> Result<CubicForm> {
        assert_eq!(self.ctx, ctx.id(), "form from the wrong field");
        let rows: Vec<Vec<FieldElem>> = m.iter().map(|r| r.to_vec()).collect();
        if crate::linalg::Mat::from_rows(&rows).det(ctx).is_zero() {
            return Err(Error::InvalidArgument(
                "singular substitution matrix".into(),
            ));
        }
        let lines: [LinearForm; 3] = [
            LinearForm::new(ctx, m[0]),
            LinearForm::new(ctx, m[1]),
            LinearForm::new(ctx, m[2]),
        ];
        let mut out = CubicForm::zero(ctx);
        for (i, e) in CUBIC_MONOMIALS.iter().enumerate() {
            if self.c[i].is_zero() {
                continue;
            }
            // pick the three linear factors this monomial expands into
            let mut picks: Vec<&LinearForm> = Vec::with_capacity(3);
            for (v, &exp) in e.iter().enumerate() {
                for _ in 0..exp {
                    picks.push(&lines[v]);
                }
            }
            let term = CubicForm::from_lines(ctx, picks[0], picks[1], picks[2]);
            out = out.add(ctx, &term.scale(ctx, self.c[i]));
        }
        Ok(out)
    }

    /// Coefficient-wise image under a field map; see
    /// [`LinearForm::map_coeffs`].
    pub fn map_coeffs(
        &self,
        target: &FieldCtx,
        mut f: impl FnMut(FieldElem) -> FieldElem,
    ) -> CubicForm {
        let c = self.c.map(&mut f);
        CubicForm::new(target, c)
    }
}

/// Scales a coefficient vector so its first nonzero entry is 1.
fn normalize_slice(ctx: &FieldCtx, id: CtxId, v: &[FieldElem]) -> Option<Vec<FieldElem>> {
    assert_eq!(id, ctx.id(), "form from the wrong field");
    let lead = v.iter().find(|c| !c.is_zero())?;
    let inv = ctx.inv(*lead);
    Some(v.iter().map(|&c| ctx.mul(c, inv)).collect())
}

impl ProjectivePoint {
    /// Normalizes on construction; panics on (0,0,0).
    pub fn new(ctx: &FieldCtx, x: FieldElem, y: FieldElem, z: FieldElem) -> ProjectivePoint {
        Self::try_new(ctx, x, y, z).expect("(0,0,0) is not a projective point")
    }

    /// `None` for the zero triple.
    pub fn try_new(
        ctx: &FieldCtx,
        x: FieldElem,
        y: FieldElem,
        z: FieldElem,
    ) -> Option<ProjectivePoint> {
        let v = normalize_slice(ctx, ctx.id(), &[x, y, z])?;
        Some(ProjectivePoint {
            ctx: ctx.id(),
            xyz: [v[0], v[1], v[2]],
        })
    }

    pub fn ctx(&self) -> CtxId {
        self.ctx
    }

    pub fn coords(&self) -> [FieldElem; 3] {
        self.xyz
    }

    /// Coordinate-wise image under a field map; re-normalized in case the
    /// map is not multiplicative on the leading coordinate.
    pub fn map_coords(
        &self,
        target: &FieldCtx,
        mut f: impl FnMut(FieldElem) -> FieldElem,
    ) -> ProjectivePoint {
        let v = self.xyz.map(&mut f);
        ProjectivePoint::new(target, v[0], v[1], v[2])
    }
}

impl BinaryCubic {
    pub fn ctx(&self) -> CtxId {
        self.ctx
    }

    /// Coefficients of s^3, s^2 t, s t^2, t^3.
    pub fn coeffs(&self) -> [FieldElem; 4] {
        self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|c| c.is_zero())
    }
}

// ---- Frobenius action ----

/// Applies z -> z^q to every coefficient. A form equals its image exactly
/// when its coefficients lie in F_q. Works at any level of the tower.
pub fn frobenius_form(tower: &TowerCtx, f: &CubicForm) -> CubicForm {
    CubicForm {
        ctx: f.ctx,
        c: f.c.map(|c| tower.frobenius(c, 1)),
    }
}

/// Coordinate-wise z -> z^q on a point. Normalized representatives stay
/// normalized (the map fixes 0 and 1).
pub fn frobenius_point(tower: &TowerCtx, p: &ProjectivePoint) -> ProjectivePoint {
    ProjectivePoint {
        ctx: p.ctx,
        xyz: p.xyz.map(|c| tower.frobenius(c, 1)),
    }
}

// ---- Restriction to a line ----

/// Two deterministic points spanning the line {a0 x + a1 y + a2 z = 0},
/// as raw coordinate triples (codes). The rule pivots on the first
/// nonzero coefficient:
///   a0 != 0: A = (-a1/a0, 1, 0), B = (-a2/a0, 0, 1)
///   a1 != 0: A = (1, 0, 0),      B = (0, -a2/a1, 1)
///   else:    A = (1, 0, 0),      B = (0, 1, 0)
pub(crate) fn line_kernel_codes(ctx: &FieldCtx, a: [u64; 3]) -> ([u64; 3], [u64; 3]) {
    let one = 1u64; // the code of 1 in every representation
    if a[0] != 0 {
        let s = ctx.neg_code(ctx.div_code(a[1], a[0]));
        let t = ctx.neg_code(ctx.div_code(a[2], a[0]));
        ([s, one, 0], [t, 0, one])
    } else if a[1] != 0 {
        let t = ctx.neg_code(ctx.div_code(a[2], a[1]));
        ([one, 0, 0], [0, t, one])
    } else {
        assert!(a[2] != 0, "kernel points of the zero form");
        ([one, 0, 0], [0, one, 0])
    }
}

/// Restrictions of all ten canonical cubic monomials to the line spanned
/// by code-points A and B: entry i holds the binary cubic of monomial i
/// evaluated at sA + tB. Restricting a whole basis of cubics then costs
/// one 10-way dot product per output coefficient, which is what keeps the
/// full line scan cheap.
pub(crate) fn monomial_restrictions(
    ctx: &FieldCtx,
    a: [u64; 3],
    b: [u64; 3],
) -> [[u64; 4]; 10] {
    let mut out = [[0u64; 4]; 10];
    for (i, e) in CUBIC_MONOMIALS.iter().enumerate() {
        // product of e[v] copies of (a[v] s + b[v] t), built by repeated
        // multiplication of binary polynomials
        let mut acc = [1u64, 0, 0, 0];
        let mut deg = 0usize;
        for v in 0..3 {
            for _ in 0..e[v] {
                let mut next = [0u64; 4];
                for (d, &coef) in acc.iter().enumerate().take(deg + 1) {
                    if coef != 0 {
                        next[d] = ctx.add_code(next[d], ctx.mul_code(coef, a[v]));
                        next[d + 1] = ctx.add_code(next[d + 1], ctx.mul_code(coef, b[v]));
                    }
                }
                acc = next;
                deg += 1;
            }
        }
        out[i] = acc;
    }
    out
}

/// F restricted to the line {L = 0}, parametrized by the deterministic
/// kernel points of [`line_kernel_codes`]. The result is identically zero
/// exactly when L divides F.
pub fn restrict_to_line(ctx: &FieldCtx, f: &CubicForm, l: &LinearForm) -> BinaryCubic {
    assert_eq!(f.ctx(), ctx.id(), "form from the wrong field");
    assert_eq!(l.ctx(), ctx.id(), "line from the wrong field");
    assert!(!l.is_zero(), "restriction to the zero form");
    let a = l.coeffs().map(|c| c.code());
    let (pa, pb) = line_kernel_codes(ctx, a);
    let table = monomial_restrictions(ctx, pa, pb);
    let mut c = [0u64; 4];
    for (i, row) in table.iter().enumerate() {
        let ci = f.c[i].code();
        if ci != 0 {
            for d in 0..4 {
                c[d] = ctx.add_code(c[d], ctx.mul_code(ci, row[d]));
            }
        }
    }
    BinaryCubic {
        ctx: ctx.id(),
        c: c.map(|v| ctx.from_code(v)),
    }
}

// ---- Enumeration of lines and points ----

/// Number of points (equally, lines) of P² over a field of size m.
pub fn line_count(m: u64) -> u64 {
    m * m + m + 1
}

/// The i-th canonical coefficient triple of a line of P², in the fixed
/// order [1 : β : γ] (β outer, γ inner, both in field enumeration order),
/// then [0 : 1 : γ], then [0 : 0 : 1].
fn triple_at(ctx: &FieldCtx, idx: u64) -> [FieldElem; 3] {
    let m = ctx.size();
    if idx < m * m {
        let beta = ctx.elem_at_rank(idx / m);
        let gamma = ctx.elem_at_rank(idx % m);
        [ctx.one(), beta, gamma]
    } else if idx < m * m + m {
        let gamma = ctx.elem_at_rank(idx - m * m);
        [ctx.zero(), ctx.one(), gamma]
    } else if idx == m * m + m {
        [ctx.zero(), ctx.zero(), ctx.one()]
    } else {
        panic!("index {idx} out of range for P² of size {}", line_count(m));
    }
}

/// The idx-th line in the canonical order; used for indexed parallel
/// chunking of the scan.
pub fn line_at(ctx: &FieldCtx, idx: u64) -> LinearForm {
    LinearForm {
        ctx: ctx.id(),
        a: triple_at(ctx, idx),
    }
}

/// All m² + m + 1 canonical lines, each exactly once.
pub fn enumerate_lines(ctx: &FieldCtx) -> impl Iterator<Item = LinearForm> + '_ {
    (0..line_count(ctx.size())).map(move |i| line_at(ctx, i))
}

/// The idx-th point of P² in the same canonical order as the lines.
pub fn point_at(ctx: &FieldCtx, idx: u64) -> ProjectivePoint {
    ProjectivePoint {
        ctx: ctx.id(),
        xyz: triple_at(ctx, idx),
    }
}

/// All m² + m + 1 points of P², each exactly once.
pub fn enumerate_points(ctx: &FieldCtx) -> impl Iterator<Item = ProjectivePoint> + '_ {
    (0..line_count(ctx.size())).map(move |i| point_at(ctx, i))
}
