//! Closed-form arity gap of Boolean functions from their Zhegalkin polynomial.
//!
//! A Boolean function with at least two essential variables has gap 2 exactly
//! when its polynomial, restricted to the occurring variables, is one of
//!
//! * `x_i1 + ... + x_in + c`
//! * `x_i x_j + x_i + c`
//! * `x_i x_j + x_i x_k + x_j x_k + c`
//! * `x_i x_j + x_i x_k + x_j x_k + x_i + x_j + c`
//!
//! and gap 1 otherwise.

use std::fmt;

use serde::Serialize;

use crate::anf::{to_anf, Monomial, ZhegalkinPolynomial};
use crate::error::{Error, Result};
use crate::function::{FiniteFunction, VariableIndex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FormTag {
    LinearParity,
    AndPlusVar,
    TriangleMaj,
    TriangleMajPlusTwo,
    NotSpecial,
}

impl fmt::Display for FormTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Result of matching a polynomial against the gap-2 shapes.
///
/// `participants` lists the indices bound to the roles of the matched shape,
/// in role order (`i1..in`, `(i, j)` or `(i, j, k)`); empty for `NotSpecial`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SpecialForm {
    pub tag: FormTag,
    pub participants: Vec<VariableIndex>,
    pub c: Option<u32>,
}

impl SpecialForm {
    pub fn not_special() -> Self {
        Self { tag: FormTag::NotSpecial, participants: Vec::new(), c: None }
    }

    pub fn is_special(&self) -> bool {
        self.tag != FormTag::NotSpecial
    }

    pub fn gap(&self) -> usize {
        if self.is_special() {
            2
        } else {
            1
        }
    }
}

/// Nonlinear shapes over roles `0 = i`, `1 = j`, `2 = k`.
const TEMPLATES: [(FormTag, usize, &[&[usize]]); 3] = [
    (FormTag::AndPlusVar, 2, &[&[0, 1], &[0]]),
    (FormTag::TriangleMaj, 3, &[&[0, 1], &[0, 2], &[1, 2]]),
    (FormTag::TriangleMajPlusTwo, 3, &[&[0, 1], &[0, 2], &[1, 2], &[0], &[1]]),
];

pub fn classify(p: &ZhegalkinPolynomial) -> Result<SpecialForm> {
    let occurring = p.occurring_variables();
    if occurring.len() < 2 {
        return Err(Error::EssentialArityTooSmall { ess: occurring.len() });
    }
    let c = Some(p.constant_term());
    if p.degree() == 1 {
        return Ok(SpecialForm { tag: FormTag::LinearParity, participants: occurring, c });
    }
    let mut body: Vec<u32> = p.monomials().filter(|m| *m != Monomial::ONE).map(Monomial::mask).collect();
    body.sort_unstable();
    for (tag, roles, shape) in TEMPLATES {
        if roles != occurring.len() || shape.len() != body.len() {
            continue;
        }
        for assignment in permutations(&occurring) {
            let mut inst: Vec<u32> =
                shape.iter().map(|m| m.iter().fold(0u32, |acc, &r| acc | 1 << (assignment[r].get() - 1))).collect();
            inst.sort_unstable();
            if inst == body {
                return Ok(SpecialForm { tag, participants: assignment, c });
            }
        }
    }
    Ok(SpecialForm::not_special())
}

/// Arity gap of a Boolean function through [`classify`].
pub fn gap_via_classifier(f: &FiniteFunction) -> Result<usize> {
    Ok(classify(&to_anf(f)?)?.gap())
}

/// All orderings of `items`, lexicographic in the input order.
fn permutations<T: Copy>(items: &[T]) -> Vec<Vec<T>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for (t, &head) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(t);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}
