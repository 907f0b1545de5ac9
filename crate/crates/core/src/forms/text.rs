//! Text codecs for forms.
//!
//! Two representations round-trip through here:
//!
//! * A human-readable polynomial syntax, e.g. `x^2*y + x^2*z + y^2*z` or
//!   `-3*x^3 - 5*x*y^2 + 2*x^2*z`. Terms are joined by `+` or `-`; a term
//!   is an optional coefficient followed by variable powers; `*` between
//!   factors is optional (`2x^2y` parses like `2*x^2*y`). Integer
//!   coefficients are prime-subfield constants reduced mod p (signs
//!   included), and extension-field coefficients are written in braces
//!   using the digit codec of the field, e.g. `{11}*x^3` in F_4. Every
//!   term must have total degree exactly 3; the zero form prints and
//!   parses as `0`.
//! * A positional codec: the ten coefficients as element strings in
//!   canonical monomial order.
//!
//! Printing always emits the canonical shape — terms in monomial order,
//! `+` separators, unit coefficients omitted — so printed output is also
//! a stable dictionary key.

use super::{cubic_slot, CubicForm, LinearForm};
use crate::gf::{FieldCtx, FieldElem};
use crate::{Error, Result};

/// Monomial suffixes in canonical coefficient order.
const MONOMIAL_NAMES: [&str; 10] = [
    "x^3", "y^3", "z^3", "x^2*y", "x*y^2", "y^2*z", "y*z^2", "z^2*x", "z*x^2", "x*y*z",
];

fn coeff_prefix(ctx: &FieldCtx, c: FieldElem) -> String {
    if c == ctx.one() {
        String::new()
    } else if ctx.k() == 1 {
        format!("{}*", c.code())
    } else {
        format!("{{{}}}*", ctx.elem_to_string(c))
    }
}

/// Renders a cubic in the polynomial syntax, terms in canonical order.
pub fn cubic_to_string(ctx: &FieldCtx, f: &CubicForm) -> String {
    assert_eq!(f.ctx(), ctx.id(), "form from the wrong field");
    let terms: Vec<String> = f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, &c)| format!("{}{}", coeff_prefix(ctx, c), MONOMIAL_NAMES[i]))
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

/// Renders a linear form a0*x + a1*y + a2*z in the same syntax.
pub fn linear_to_string(ctx: &FieldCtx, l: &LinearForm) -> String {
    assert_eq!(l.ctx(), ctx.id(), "form from the wrong field");
    let names = ["x", "y", "z"];
    let terms: Vec<String> = l
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, &c)| format!("{}{}", coeff_prefix(ctx, c), names[i]))
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

/// Renders a conic b0*x^2 + .. + b5*z*x in the same syntax.
pub fn conic_to_string(ctx: &FieldCtx, q: &super::ConicForm) -> String {
    assert_eq!(q.ctx(), ctx.id(), "form from the wrong field");
    let names = ["x^2", "y^2", "z^2", "x*y", "y*z", "z*x"];
    let terms: Vec<String> = q
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, &c)| format!("{}{}", coeff_prefix(ctx, c), names[i]))
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

/// Parses the polynomial syntax. Accepts arbitrary term order and
/// repeated monomials (coefficients accumulate).
pub fn cubic_from_str(ctx: &FieldCtx, s: &str) -> Result<CubicForm> {
    let mut coeffs = [ctx.zero(); 10];
    let chars: Vec<char> = s.chars().collect();
    let mut pos = 0usize;
    let n = chars.len();

    let skip_ws = |pos: &mut usize| {
        while *pos < n && chars[*pos].is_whitespace() {
            *pos += 1;
        }
    };

    skip_ws(&mut pos);
    if pos == n {
        return Err(Error::Parse("empty form string".into()));
    }
    // the zero form is a lone literal 0
    if chars[pos..].iter().all(|c| c.is_whitespace() || *c == '0') {
        let zeros = chars[pos..].iter().filter(|c| **c == '0').count();
        if zeros == 1 {
            return Ok(CubicForm::new(ctx, coeffs));
        }
    }

    let mut first = true;
    loop {
        skip_ws(&mut pos);
        if pos == n {
            break;
        }
        // sign
        let mut negative = false;
        if chars[pos] == '+' || chars[pos] == '-' {
            negative = chars[pos] == '-';
            pos += 1;
            skip_ws(&mut pos);
        } else if !first {
            return Err(Error::Parse(format!(
                "expected '+' or '-' before position {pos} in {s:?}"
            )));
        }
        first = false;
        if pos == n {
            return Err(Error::Parse(format!("dangling sign in {s:?}")));
        }

        // coefficient
        let mut coeff = ctx.one();
        let mut saw_coeff = false;
        if chars[pos] == '{' {
            let close = chars[pos..]
                .iter()
                .position(|&c| c == '}')
                .ok_or_else(|| Error::Parse(format!("unterminated '{{' in {s:?}")))?;
            let inner: String = chars[pos + 1..pos + close].iter().collect();
            coeff = ctx.elem_from_str(&inner)?;
            pos += close + 1;
            saw_coeff = true;
        } else if chars[pos].is_ascii_digit() {
            let start = pos;
            while pos < n && chars[pos].is_ascii_digit() {
                pos += 1;
            }
            let lit: String = chars[start..pos].iter().collect();
            let v: u64 = lit
                .parse()
                .map_err(|_| Error::Parse(format!("bad integer {lit:?} in {s:?}")))?;
            coeff = ctx.from_int(v);
            saw_coeff = true;
        }
        if negative {
            coeff = ctx.neg(coeff);
        }

        // variable factors, '*' optional
        let mut exps = [0u32; 3];
        let mut saw_var = false;
        loop {
            skip_ws(&mut pos);
            if pos < n && chars[pos] == '*' {
                pos += 1;
                skip_ws(&mut pos);
                if pos == n {
                    return Err(Error::Parse(format!("dangling '*' in {s:?}")));
                }
            }
            if pos == n {
                break;
            }
            let var = match chars[pos] {
                'x' => 0usize,
                'y' => 1,
                'z' => 2,
                '+' | '-' => break,
                other => {
                    return Err(Error::Parse(format!(
                        "unexpected character {other:?} at position {pos} in {s:?}"
                    )))
                }
            };
            pos += 1;
            let mut exp = 1u32;
            if pos < n && chars[pos] == '^' {
                pos += 1;
                let start = pos;
                while pos < n && chars[pos].is_ascii_digit() {
                    pos += 1;
                }
                if start == pos {
                    return Err(Error::Parse(format!("missing exponent in {s:?}")));
                }
                let lit: String = chars[start..pos].iter().collect();
                exp = lit
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent {lit:?} in {s:?}")))?;
            }
            exps[var] += exp;
            saw_var = true;
        }

        if !saw_var && !saw_coeff {
            return Err(Error::Parse(format!("empty term in {s:?}")));
        }
        let degree: u32 = exps.iter().sum();
        if degree != 3 {
            // a bare 0 summand is harmless and keeps generated output
            // parseable; anything else of the wrong degree is an error
            if !saw_var && coeff.is_zero() {
                continue;
            }
            return Err(Error::Parse(format!(
                "term of degree {degree} (expected 3) in {s:?}"
            )));
        }
        let slot = cubic_slot(exps);
        coeffs[slot] = ctx.add(coeffs[slot], coeff);
    }

    Ok(CubicForm::new(ctx, coeffs))
}

/// The ten coefficients as element strings, canonical monomial order.
pub fn cubic_codes(ctx: &FieldCtx, f: &CubicForm) -> Vec<String> {
    assert_eq!(f.ctx(), ctx.id(), "form from the wrong field");
    f.coeffs().iter().map(|&c| ctx.elem_to_string(c)).collect()
}

/// Rebuilds a cubic from ten element strings.
pub fn cubic_from_codes(ctx: &FieldCtx, codes: &[String]) -> Result<CubicForm> {
    if codes.len() != 10 {
        return Err(Error::Parse(format!(
            "positional codec needs 10 coefficients, got {}",
            codes.len()
        )));
    }
    let mut coeffs = [ctx.zero(); 10];
    for (i, code) in codes.iter().enumerate() {
        coeffs[i] = ctx.elem_from_str(code)?;
    }
    Ok(CubicForm::new(ctx, coeffs))
}
