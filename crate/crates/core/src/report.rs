//! Serializable views of every outcome type, plus CSV and plain-text
//! renderings for the command-line tool.
//!
//! Each view is a plain data struct: field elements become digit strings
//! in the per-field codec ([`FieldCtx::elem_to_string`]), forms carry
//! both the polynomial syntax and their raw coefficient codes, and every
//! witness records the moduli of the fields it lives in — enough for a
//! third party to re-parse the report and re-run the checks without this
//! crate's internal representations.
//!
//! Rendering goes through [`Render`]: JSON is the single lossless format
//! (views round-trip through serde), CSV emits either a proper table
//! (tabular views) or `key,value` pairs (witness views), and text is a
//! human-readable summary.

use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::time::Duration;

use crate::classify::CubicVerdict;
use crate::construct::{ExplicitWitness, MonomialFamilyReport, OrbitWitness};
use crate::error::{Error, Result};
use crate::forms::text::{conic_to_string, cubic_codes, cubic_to_string, linear_to_string};
use crate::forms::{CubicForm, LinearForm};
use crate::gf::tower::TowerCtx;
use crate::gf::FieldCtx;
use crate::linsys::{LinearSystem, ScanReport};
use crate::search::{CensusOutcome, ExtensionOutcome, SearchOutcome, TableRowOutcome};

// ---- Output formats ----

/// Output encodings the views render to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            other => Err(Error::Parse(format!(
                "unknown format {other:?}, expected json, csv, or text"
            ))),
        }
    }
}

/// Common rendering surface. JSON comes from serde and is newline
/// terminated; the other two are bespoke per view.
pub trait Render: Serialize {
    /// Pretty-printed JSON, newline-terminated.
    fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("views contain no non-string keys");
        s.push('\n');
        s
    }

    /// Comma-separated rendering; values containing commas or quotes are
    /// quoted per the usual CSV convention.
    fn to_csv(&self) -> String;

    /// Human-readable multi-line summary.
    fn to_text(&self) -> String;

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
            Format::Text => self.to_text(),
        }
    }
}

fn ms(d: Duration) -> u64 {
    d.as_millis() as u64
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn kv_csv(pairs: &[(&str, String)]) -> String {
    let mut out = String::from("key,value\n");
    for (k, v) in pairs {
        let _ = writeln!(out, "{},{}", k, csv_field(v));
    }
    out
}

// ---- Shared fragments ----

/// Everything needed to reconstruct a field: characteristic, extension
/// degree, size, and the modulus digit string (constant term first).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldView {
    pub p: u64,
    pub k: u32,
    pub size: u64,
    pub modulus: String,
}

pub fn field_view(ctx: &FieldCtx) -> FieldView {
    FieldView {
        p: ctx.p(),
        k: ctx.k(),
        size: ctx.size(),
        modulus: ctx.modulus_string(),
    }
}

/// A form in both codecs: display syntax plus per-coefficient digit
/// strings in canonical monomial order, which re-parse exactly.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormView {
    pub text: String,
    pub coeffs: Vec<String>,
}

pub fn cubic_view(ctx: &FieldCtx, f: &CubicForm) -> FormView {
    FormView {
        text: cubic_to_string(ctx, f),
        coeffs: cubic_codes(ctx, f),
    }
}

pub fn linear_view(ctx: &FieldCtx, l: &LinearForm) -> FormView {
    FormView {
        text: linear_to_string(ctx, l),
        coeffs: l.coeffs().iter().map(|&c| ctx.elem_to_string(c)).collect(),
    }
}

/// A verdict with its factor data rendered to strings. `line` and
/// `conic` appear for a rational factorization; `orbit` appears for a
/// conjugate line triple and is written over the cubic extension.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictView {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub line: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conic: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbit: Option<Vec<String>>,
}

pub fn verdict_view(tower: &TowerCtx, verdict: &CubicVerdict) -> VerdictView {
    let mut view = VerdictView {
        kind: verdict.kind().to_string(),
        line: None,
        conic: None,
        orbit: None,
    };
    match verdict {
        CubicVerdict::FqReducible { line, conic } => {
            view.line = Some(linear_to_string(tower.base(), line));
            view.conic = Some(conic_to_string(tower.base(), conic));
        }
        CubicVerdict::FqIrreducibleGeomReducible { orbit } => {
            view.orbit = Some(
                orbit
                    .iter()
                    .map(|l| linear_to_string(tower.cubic(), l))
                    .collect(),
            );
        }
        CubicVerdict::Zero | CubicVerdict::GeomIrreducible => {}
    }
    view
}

/// One scanned member that failed geometric irreducibility.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReducibleMemberView {
    /// Member coefficients as digit strings, basis order.
    pub index: Vec<String>,
    /// The same coefficients as raw enumeration codes.
    pub codes: Vec<u64>,
    pub form: FormView,
    pub verdict: VerdictView,
}

/// Serializable scan summary: how much was checked and every member
/// that degenerated.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanView {
    pub label: String,
    pub members: u64,
    pub lines_scanned: u64,
    pub elapsed_ms: u64,
    pub reducible: Vec<ReducibleMemberView>,
}

pub fn scan_view(tower: &TowerCtx, system: &LinearSystem, scan: &ScanReport) -> ScanView {
    let base = tower.base();
    let reducible = scan
        .reducible
        .iter()
        .map(|(idx, verdict)| ReducibleMemberView {
            index: idx
                .coeffs(base)
                .iter()
                .map(|&c| base.elem_to_string(c))
                .collect(),
            codes: idx.codes().to_vec(),
            form: cubic_view(base, &system.member_form(base, idx)),
            verdict: verdict_view(tower, verdict),
        })
        .collect();
    ScanView {
        label: scan.label.clone(),
        members: scan.member_count,
        lines_scanned: scan.lines_scanned,
        elapsed_ms: ms(scan.elapsed),
        reducible,
    }
}

fn basis_views(ctx: &FieldCtx, system: &LinearSystem) -> Vec<FormView> {
    system.basis().iter().map(|f| cubic_view(ctx, f)).collect()
}

fn scan_text(out: &mut String, scan: &ScanView) {
    let _ = writeln!(
        out,
        "  members: {}, lines scanned: {}, elapsed: {} ms",
        scan.members, scan.lines_scanned, scan.elapsed_ms
    );
    if scan.reducible.is_empty() {
        out.push_str("  reducible members: none\n");
    } else {
        let _ = writeln!(out, "  reducible members: {}", scan.reducible.len());
        for m in &scan.reducible {
            let _ = writeln!(
                out,
                "    [{}]  {}  ->  {}",
                m.index.join(","),
                m.form.text,
                m.verdict.kind
            );
        }
    }
}

// ---- Explicit construction ----

/// Full transcript of the normal-basis construction for one q: the
/// normal element, the conjugate lines, the cycle products over the
/// cubic extension, the descended basis, and the verifying scan.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExplicitView {
    pub q: u64,
    pub base_field: FieldView,
    pub cubic_field: FieldView,
    /// Normal element of the cubic extension the lines are built from.
    pub alpha: String,
    /// Conjugate lines l0, l1, l2 over the cubic extension.
    pub lines: Vec<FormView>,
    /// The products li^2 * l(i+1), cyclically.
    pub cycle: Vec<FormView>,
    /// l0*l1*l2; after descent this is the unique reducible member.
    pub triple: FormView,
    pub label: String,
    /// Descended basis over the base field.
    pub basis: Vec<FormView>,
    pub scan: ScanView,
}

pub fn explicit_view(tower: &TowerCtx, w: &ExplicitWitness) -> ExplicitView {
    let cubic = tower.cubic();
    ExplicitView {
        q: w.q(),
        base_field: field_view(tower.base()),
        cubic_field: field_view(cubic),
        alpha: cubic.elem_to_string(w.alpha()),
        lines: w.lines().iter().map(|l| linear_view(cubic, l)).collect(),
        cycle: w.cycle().iter().map(|f| cubic_view(cubic, f)).collect(),
        triple: cubic_view(cubic, w.triple_product()),
        label: w.system().label().to_string(),
        basis: basis_views(tower.base(), w.system()),
        scan: scan_view(tower, w.system(), w.scan()),
    }
}

impl Render for ExplicitView {
    fn to_csv(&self) -> String {
        let mut pairs: Vec<(&str, String)> = vec![
            ("q", self.q.to_string()),
            ("alpha", self.alpha.clone()),
            ("cubic_modulus", self.cubic_field.modulus.clone()),
        ];
        for (i, l) in self.lines.iter().enumerate() {
            pairs.push((["line0", "line1", "line2"][i], l.text.clone()));
        }
        pairs.push(("triple", self.triple.text.clone()));
        for (i, f) in self.basis.iter().enumerate() {
            pairs.push((["basis0", "basis1", "basis2", "basis3"][i], f.text.clone()));
        }
        pairs.push(("members", self.scan.members.to_string()));
        pairs.push(("reducible", self.scan.reducible.len().to_string()));
        if let Some(m) = self.scan.reducible.first() {
            pairs.push(("reducible_index", m.index.join(" ")));
            pairs.push(("reducible_kind", m.verdict.kind.clone()));
        }
        pairs.push(("elapsed_ms", self.scan.elapsed_ms.to_string()));
        kv_csv(&pairs)
    }

    fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "normal-basis construction, q = {}", self.q);
        let _ = writeln!(
            out,
            "  normal element: {} (cubic extension modulus {})",
            self.alpha, self.cubic_field.modulus
        );
        for (i, l) in self.lines.iter().enumerate() {
            let _ = writeln!(out, "  l{i} = {}", l.text);
        }
        for (i, f) in self.basis.iter().enumerate() {
            let _ = writeln!(out, "  basis[{i}] = {}", f.text);
        }
        scan_text(&mut out, &self.scan);
        out
    }
}

// ---- Orbit construction ----

/// Full transcript of the conjugate-orbit construction for one q: the
/// orbit points over the sextic extension, the cut-out system, the
/// verifying scan, and the chord factorization of the one reducible
/// member.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitView {
    pub q: u64,
    pub seed: u64,
    pub candidates: u64,
    pub base_field: FieldView,
    pub top_field: FieldView,
    /// The six conjugate points, coordinates over the sextic extension.
    pub orbit: Vec<Vec<String>>,
    pub label: String,
    pub basis: Vec<FormView>,
    pub scan: ScanView,
    /// Index of the unique geometrically reducible member.
    pub member_index: Vec<String>,
    pub member_form: FormView,
    /// Chords through opposite orbit points, over the sextic extension;
    /// their product is the reducible member.
    pub chords: Vec<FormView>,
}

pub fn orbit_view(tower: &TowerCtx, w: &OrbitWitness) -> OrbitView {
    let base = tower.base();
    let top = tower.top();
    let (idx, form) = w.reducible_member();
    OrbitView {
        q: w.q(),
        seed: w.seed(),
        candidates: w.candidates(),
        base_field: field_view(base),
        top_field: field_view(top),
        orbit: w
            .orbit()
            .iter()
            .map(|p| p.coords().iter().map(|&c| top.elem_to_string(c)).collect())
            .collect(),
        label: w.system().label().to_string(),
        basis: basis_views(base, w.system()),
        scan: scan_view(tower, w.system(), w.scan()),
        member_index: idx
            .coeffs(base)
            .iter()
            .map(|&c| base.elem_to_string(c))
            .collect(),
        member_form: cubic_view(base, form),
        chords: w.chords().iter().map(|l| linear_view(top, l)).collect(),
    }
}

impl Render for OrbitView {
    fn to_csv(&self) -> String {
        let mut pairs: Vec<(&str, String)> = vec![
            ("q", self.q.to_string()),
            ("seed", self.seed.to_string()),
            ("candidates", self.candidates.to_string()),
            ("top_modulus", self.top_field.modulus.clone()),
            ("point", self.orbit[0].join(" ")),
        ];
        for (i, f) in self.basis.iter().enumerate() {
            pairs.push((["basis0", "basis1", "basis2", "basis3"][i], f.text.clone()));
        }
        pairs.push(("members", self.scan.members.to_string()));
        pairs.push(("reducible_index", self.member_index.join(" ")));
        pairs.push(("reducible_form", self.member_form.text.clone()));
        for (i, c) in self.chords.iter().enumerate() {
            pairs.push((["chord0", "chord1", "chord2"][i], c.text.clone()));
        }
        pairs.push(("elapsed_ms", self.scan.elapsed_ms.to_string()));
        kv_csv(&pairs)
    }

    fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "conjugate-orbit construction, q = {} (seed {}, {} candidates)",
            self.q, self.seed, self.candidates
        );
        let _ = writeln!(
            out,
            "  orbit point: [{}] over the sextic extension (modulus {})",
            self.orbit[0].join(" : "),
            self.top_field.modulus
        );
        for (i, f) in self.basis.iter().enumerate() {
            let _ = writeln!(out, "  basis[{i}] = {}", f.text);
        }
        scan_text(&mut out, &self.scan);
        let _ = writeln!(
            out,
            "  chord product: ({}) ({}) ({})",
            self.chords[0].text, self.chords[1].text, self.chords[2].text
        );
        out
    }
}

// ---- Monomial family ----

/// Tally of the four-parameter monomial family over one field, counted
/// over affine coefficient tuples.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyView {
    pub q: u64,
    pub members: u64,
    pub tuples: u64,
    pub fq_reducible: u64,
    pub fq_irreducible_geom_reducible: u64,
    pub geom_irreducible: u64,
}

pub fn family_view(report: &MonomialFamilyReport) -> FamilyView {
    FamilyView {
        q: report.q,
        members: report.members,
        tuples: report.tuples,
        fq_reducible: report.fq_reducible,
        fq_irreducible_geom_reducible: report.fq_irreducible_geom_reducible,
        geom_irreducible: report.geom_irreducible,
    }
}

impl Render for FamilyView {
    fn to_csv(&self) -> String {
        format!(
            "q,members,tuples,fq_reducible,fq_irreducible_geom_reducible,geom_irreducible\n{},{},{},{},{},{}\n",
            self.q,
            self.members,
            self.tuples,
            self.fq_reducible,
            self.fq_irreducible_geom_reducible,
            self.geom_irreducible
        )
    }

    fn to_text(&self) -> String {
        format!(
            "monomial family, q = {}: {} members ({} tuples)\n  \
             rationally reducible: {}\n  \
             conjugate line triples: {}\n  \
             geometrically irreducible: {}\n",
            self.q,
            self.members,
            self.tuples,
            self.fq_reducible,
            self.fq_irreducible_geom_reducible,
            self.geom_irreducible
        )
    }
}

// ---- Random search ----

/// An accepted search witness: the basis in both codecs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessView {
    pub label: String,
    pub basis: Vec<FormView>,
}

/// Search statistics plus the witness, when one was found.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchView {
    pub q: u64,
    pub seed: u64,
    pub candidates: u64,
    pub rejections: u64,
    pub elapsed_ms: u64,
    pub found: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessView>,
}

pub fn search_view(tower: &TowerCtx, outcome: &SearchOutcome) -> SearchView {
    let witness = outcome.witness.as_ref().map(|system| WitnessView {
        label: system.label().to_string(),
        basis: basis_views(tower.base(), system),
    });
    SearchView {
        q: outcome.q,
        seed: outcome.seed,
        candidates: outcome.candidates,
        rejections: outcome.rejections,
        elapsed_ms: ms(outcome.elapsed),
        found: witness.is_some(),
        witness,
    }
}

impl Render for SearchView {
    fn to_csv(&self) -> String {
        let mut pairs: Vec<(&str, String)> = vec![
            ("q", self.q.to_string()),
            ("seed", self.seed.to_string()),
            ("candidates", self.candidates.to_string()),
            ("rejections", self.rejections.to_string()),
            ("elapsed_ms", self.elapsed_ms.to_string()),
            ("found", self.found.to_string()),
        ];
        if let Some(w) = &self.witness {
            for (i, f) in w.basis.iter().enumerate() {
                pairs.push((["form0", "form1", "form2", "form3"][i], f.text.clone()));
            }
        }
        kv_csv(&pairs)
    }

    fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "random search, q = {} (seed {}): {} candidates, {} dependent rejections, {} ms",
            self.q, self.seed, self.candidates, self.rejections, self.elapsed_ms
        );
        match &self.witness {
            Some(w) => {
                out.push_str("  witness found:\n");
                for (i, f) in w.basis.iter().enumerate() {
                    let _ = writeln!(out, "    F{i} = {}", f.text);
                }
            }
            None => out.push_str("  no witness within the iteration budget\n"),
        }
        out
    }
}

/// One compact JSON line for an append-only witness log: seed, draw
/// statistics, and the accepted basis in both codecs. `None` when the
/// search came back empty.
pub fn witness_log_line(tower: &TowerCtx, outcome: &SearchOutcome) -> Option<String> {
    let system = outcome.witness.as_ref()?;
    let base = tower.base();
    let entry = serde_json::json!({
        "q": outcome.q,
        "seed": outcome.seed,
        "candidates": outcome.candidates,
        "rejections": outcome.rejections,
        "elapsed_ms": ms(outcome.elapsed),
        "forms": system
            .basis()
            .iter()
            .map(|f| cubic_to_string(base, f))
            .collect::<Vec<_>>(),
        "codes": system
            .basis()
            .iter()
            .map(|f| cubic_codes(base, f))
            .collect::<Vec<_>>(),
    });
    let mut line = serde_json::to_string(&entry).expect("string-keyed object");
    line.push('\n');
    Some(line)
}

// ---- Bundled table verification ----

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableRowView {
    pub q: u64,
    pub members: u64,
    pub lines_scanned: u64,
    pub elapsed_ms: u64,
}

/// Per-row outcome of re-verifying the bundled witness table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableView {
    pub rows: Vec<TableRowView>,
}

pub fn table_view(rows: &[TableRowOutcome]) -> TableView {
    TableView {
        rows: rows
            .iter()
            .map(|r| TableRowView {
                q: r.q,
                members: r.members,
                lines_scanned: r.lines_scanned,
                elapsed_ms: ms(r.elapsed),
            })
            .collect(),
    }
}

impl Render for TableView {
    fn to_csv(&self) -> String {
        let mut out = String::from("q,members,lines_scanned,elapsed_ms\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                r.q, r.members, r.lines_scanned, r.elapsed_ms
            );
        }
        out
    }

    fn to_text(&self) -> String {
        let mut out = format!("witness table: {} rows verified\n", self.rows.len());
        for r in &self.rows {
            let _ = writeln!(
                out,
                "  q = {:2}: {} members geometrically irreducible ({} line checks, {} ms)",
                r.q, r.members, r.lines_scanned, r.elapsed_ms
            );
        }
        out
    }
}

// ---- Extension re-check ----

/// Outcome of re-reading a system over an extension field. `clean` is
/// true when no member over the larger field degenerates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtensionView {
    pub q: u64,
    pub k: u32,
    pub extended_q: u64,
    pub field: FieldView,
    pub label: String,
    pub basis: Vec<FormView>,
    pub clean: bool,
    pub scan: ScanView,
}

pub fn extension_view(outcome: &ExtensionOutcome) -> ExtensionView {
    let tower = &outcome.tower;
    ExtensionView {
        q: outcome.q,
        k: outcome.k,
        extended_q: outcome.extended_q,
        field: field_view(tower.base()),
        label: outcome.system.label().to_string(),
        basis: basis_views(tower.base(), &outcome.system),
        clean: outcome.scan.reducible.is_empty(),
        scan: scan_view(tower, &outcome.system, &outcome.scan),
    }
}

impl Render for ExtensionView {
    fn to_csv(&self) -> String {
        let mut pairs: Vec<(&str, String)> = vec![
            ("q", self.q.to_string()),
            ("k", self.k.to_string()),
            ("extended_q", self.extended_q.to_string()),
            ("members", self.scan.members.to_string()),
            ("clean", self.clean.to_string()),
            ("reducible", self.scan.reducible.len().to_string()),
            ("elapsed_ms", self.scan.elapsed_ms.to_string()),
        ];
        for (i, f) in self.basis.iter().enumerate() {
            pairs.push((["form0", "form1", "form2", "form3"][i], f.text.clone()));
        }
        kv_csv(&pairs)
    }

    fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "extension check: q = {} read over q^{} = {}",
            self.q, self.k, self.extended_q
        );
        scan_text(&mut out, &self.scan);
        let _ = writeln!(
            out,
            "  verdict: {}",
            if self.clean {
                "clean (every extended member geometrically irreducible)"
            } else {
                "NOT clean (reducible members listed above)"
            }
        );
        out
    }
}

// ---- Census ----

/// Census totals for one field size with the derived fractions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusView {
    pub q: u64,
    pub total: u64,
    pub reducible: u64,
    pub geom_irreducible: u64,
    pub reducible_fraction: f64,
    pub irreducible_fraction: f64,
}

pub fn census_view(outcome: &CensusOutcome) -> CensusView {
    CensusView {
        q: outcome.q,
        total: outcome.total,
        reducible: outcome.reducible,
        geom_irreducible: outcome.total - outcome.reducible,
        reducible_fraction: outcome.reducible_fraction(),
        irreducible_fraction: outcome.irreducible_fraction(),
    }
}

impl Render for CensusView {
    fn to_csv(&self) -> String {
        format!(
            "q,total,reducible,geom_irreducible,reducible_fraction,irreducible_fraction\n{},{},{},{},{},{}\n",
            self.q,
            self.total,
            self.reducible,
            self.geom_irreducible,
            self.reducible_fraction,
            self.irreducible_fraction
        )
    }

    fn to_text(&self) -> String {
        format!(
            "census, q = {}: {} normalized cubics, {} geometrically reducible ({:.4} of all), {} irreducible\n",
            self.q, self.total, self.reducible, self.reducible_fraction, self.geom_irreducible
        )
    }
}

// ---- Single-form classification ----

/// One form and its verdict, for the one-off classifier.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassifyView {
    pub q: u64,
    pub form: FormView,
    pub verdict: VerdictView,
}

pub fn classify_view(tower: &TowerCtx, form: &CubicForm, verdict: &CubicVerdict) -> ClassifyView {
    ClassifyView {
        q: tower.q(),
        form: cubic_view(tower.base(), form),
        verdict: verdict_view(tower, verdict),
    }
}

impl Render for ClassifyView {
    fn to_csv(&self) -> String {
        let mut pairs: Vec<(&str, String)> = vec![
            ("q", self.q.to_string()),
            ("form", self.form.text.clone()),
            ("verdict", self.verdict.kind.clone()),
        ];
        if let Some(l) = &self.verdict.line {
            pairs.push(("line", l.clone()));
        }
        if let Some(c) = &self.verdict.conic {
            pairs.push(("conic", c.clone()));
        }
        if let Some(orbit) = &self.verdict.orbit {
            pairs.push(("orbit", orbit.join(" | ")));
        }
        kv_csv(&pairs)
    }

    fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}  (q = {})", self.form.text, self.q);
        let _ = writeln!(out, "  verdict: {}", self.verdict.kind);
        if let Some(l) = &self.verdict.line {
            let _ = writeln!(out, "  line factor: {l}");
        }
        if let Some(c) = &self.verdict.conic {
            let _ = writeln!(out, "  conic factor: {c}");
        }
        if let Some(orbit) = &self.verdict.orbit {
            for (i, l) in orbit.iter().enumerate() {
                let _ = writeln!(out, "  conjugate line {i}: {l}");
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::classify;
    use crate::construct::{
        explicit_construction, galois_orbit_construction, monomial_family_check,
        ORBIT_SEARCH_BUDGET,
    };
    use crate::forms::text::{cubic_from_codes, cubic_from_str};
    use crate::gf::tower::make_tower;
    use crate::search::{extension_check, random_search, verify_table_row, SearchConfig, WITNESS_TABLE};

    #[test]
    fn explicit_view_round_trips_and_pins_q2() {
        let tower = make_tower(2).unwrap();
        let witness = explicit_construction(&tower);
        let view = explicit_view(&tower, &witness);
        assert_eq!(view.alpha, "001");
        assert_eq!(view.cubic_field.modulus, "1011");
        assert_eq!(view.basis.len(), 4);
        assert_eq!(view.scan.members, 15);
        assert_eq!(view.scan.reducible.len(), 1);
        let member = &view.scan.reducible[0];
        assert_eq!(member.index, ["0", "0", "0", "1"]);
        assert_eq!(member.codes, [0, 0, 0, 1]);
        assert_eq!(member.verdict.kind, "FqIrreducibleGeomReducible");
        assert_eq!(member.verdict.orbit.as_ref().unwrap().len(), 3);

        let json = view.to_json();
        let back: ExplicitView = serde_json::from_str(&json).unwrap();
        assert_eq!(back, view);

        // The positional codec embedded in the view re-parses to the form.
        let base = tower.base();
        for (view_form, basis_form) in view.basis.iter().zip(witness.system().basis()) {
            let parsed = cubic_from_codes(base, &view_form.coeffs).unwrap();
            assert_eq!(parsed.coeffs(), basis_form.coeffs());
            let reparsed = cubic_from_str(base, &view_form.text).unwrap();
            assert_eq!(reparsed.coeffs(), basis_form.coeffs());
        }

        let csv = view.to_csv();
        assert!(csv.starts_with("key,value\n"));
        assert!(csv.contains("alpha,001"));
        let text = view.to_text();
        assert!(text.contains("q = 2"));
        assert!(text.contains("FqIrreducibleGeomReducible"));
    }

    #[test]
    fn orbit_and_search_views_cover_their_witnesses() {
        let tower = make_tower(2).unwrap();
        let witness = galois_orbit_construction(&tower, 1, ORBIT_SEARCH_BUDGET).unwrap();
        let view = orbit_view(&tower, &witness);
        assert_eq!(view.orbit.len(), 6);
        assert!(view.orbit.iter().all(|p| p.len() == 3));
        assert_eq!(view.chords.len(), 3);
        assert_eq!(view.scan.reducible.len(), 1);
        assert_eq!(view.member_form.text, view.scan.reducible[0].form.text);
        let back: OrbitView = serde_json::from_str(&view.to_json()).unwrap();
        assert_eq!(back, view);
        assert!(view.to_text().contains("chord product"));

        let outcome = random_search(&tower, &SearchConfig::default());
        let sview = search_view(&tower, &outcome);
        assert!(sview.found);
        assert_eq!(sview.witness.as_ref().unwrap().basis.len(), 4);
        let log = witness_log_line(&tower, &outcome).unwrap();
        assert!(log.ends_with('\n'));
        let parsed: serde_json::Value = serde_json::from_str(&log).unwrap();
        assert_eq!(parsed["forms"].as_array().unwrap().len(), 4);
        assert_eq!(parsed["codes"][0].as_array().unwrap().len(), 10);

        // An empty search serializes without a witness object.
        let empty = random_search(
            &tower,
            &SearchConfig {
                seed: 3,
                max_iters: 1,
                ..SearchConfig::default()
            },
        );
        assert!(witness_log_line(&tower, &empty).is_none());
        let eview = search_view(&tower, &empty);
        assert!(!eview.found);
        assert!(!eview.to_json().contains("witness"));
        let eback: SearchView = serde_json::from_str(&eview.to_json()).unwrap();
        assert_eq!(eback, eview);
    }

    #[test]
    fn classify_view_carries_factor_strings() {
        let tower = make_tower(2).unwrap();
        let base = tower.base();

        let f = cubic_from_str(base, "x^3 + y*z^2").unwrap();
        let view = classify_view(&tower, &f, &classify(&tower, &f));
        assert_eq!(view.verdict.kind, "GeomIrreducible");
        assert!(view.verdict.line.is_none() && view.verdict.orbit.is_none());

        let g = cubic_from_str(base, "x^3 + x*y*z").unwrap();
        let gview = classify_view(&tower, &g, &classify(&tower, &g));
        assert_eq!(gview.verdict.kind, "FqReducible");
        assert_eq!(gview.verdict.line.as_deref(), Some("x"));
        assert!(gview.verdict.conic.is_some());
        assert!(gview.to_csv().contains("line,x"));
        assert!(gview.to_text().contains("line factor: x"));
    }

    #[test]
    fn table_extension_census_and_family_views_render() {
        let rows = vec![verify_table_row(&WITNESS_TABLE[0]).unwrap()];
        let tview = table_view(&rows);
        let csv = tview.to_csv();
        assert!(csv.starts_with("q,members,lines_scanned,elapsed_ms\n"));
        assert_eq!(csv.lines().count(), 2);
        assert!(csv.lines().nth(1).unwrap().starts_with("2,15,"));
        let back: TableView = serde_json::from_str(&tview.to_json()).unwrap();
        assert_eq!(back, tview);

        let tower = make_tower(2).unwrap();
        let witness = explicit_construction(&tower);
        let outcome = extension_check(tower.base(), witness.system(), 1).unwrap();
        let eview = extension_view(&outcome);
        // k = 1 re-reads over the same field: one reducible member, the
        // descended triple, so the check reports not-clean.
        assert_eq!(eview.extended_q, 2);
        assert!(!eview.clean);
        assert_eq!(eview.scan.reducible.len(), 1);
        assert!(eview.to_text().contains("NOT clean"));

        let census = CensusOutcome {
            q: 2,
            reducible: 100,
            total: 1000,
        };
        let cview = census_view(&census);
        assert_eq!(cview.geom_irreducible, 900);
        assert!((cview.reducible_fraction - 0.1).abs() < 1e-12);
        assert!(cview.to_csv().lines().nth(1).unwrap().starts_with("2,1000,100,900,"));

        let family = monomial_family_check(&tower).unwrap();
        let fview = family_view(&family);
        assert_eq!(fview.members, 15);
        assert_eq!(
            fview.fq_reducible + fview.fq_irreducible_geom_reducible + fview.geom_irreducible,
            fview.tuples
        );
        assert!(fview.to_text().contains("monomial family"));
    }

    #[test]
    fn format_parses_case_insensitively() {
        assert_eq!("JSON".parse::<Format>().unwrap(), Format::Json);
        assert_eq!("csv".parse::<Format>().unwrap(), Format::Csv);
        assert_eq!("Text".parse::<Format>().unwrap(), Format::Text);
        assert!("yaml".parse::<Format>().is_err());
    }
}
