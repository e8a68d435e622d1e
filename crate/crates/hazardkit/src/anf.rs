//! Algebraic normal form over the two-element field, and nonlinear-core
//! extraction for arbitrary gate libraries.
//!
//! Every Boolean function is a unique XOR of monomials (AND-products of
//! variables). A function is linear iff no monomial has degree two or more;
//! from any nonlinear function a constant substitution exposes a two-input
//! core of the shape `(xi ^ c1)(xj ^ c2) ^ c0`, which is how a single
//! nonlinear library gate yields a conjunction.

use crate::table::TruthTable;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

/// Largest variable count accepted by the transforms here.
pub const MAX_ANF_VARS: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnfError {
    #[error("{0} variables exceed the ANF guard of {1}")]
    TooManyVars(usize, usize),
}

/// XOR of monomials; each monomial is the set of 1-based variable indices
/// it multiplies, and the empty set is the constant-1 term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnfPolynomial {
    vars: usize,
    monomials: BTreeSet<BTreeSet<usize>>,
}

impl AnfPolynomial {
    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn monomials(&self) -> &BTreeSet<BTreeSet<usize>> {
        &self.monomials
    }

    pub fn degree(&self) -> usize {
        self.monomials.iter().map(|m| m.len()).max().unwrap_or(0)
    }

    /// No monomial of degree two or more.
    pub fn is_linear(&self) -> bool {
        self.degree() <= 1
    }

    pub fn eval(&self, word: &[bool]) -> bool {
        assert_eq!(word.len(), self.vars, "input word width mismatch");
        let mut acc = false;
        for m in &self.monomials {
            acc ^= m.iter().all(|&v| word[v - 1]);
        }
        acc
    }
}

/// Computes the ANF of a truth table by the in-place Möbius butterfly over
/// the two-element field.
pub fn anf_of(table: &TruthTable) -> Result<AnfPolynomial, AnfError> {
    let n = table.vars();
    if n > MAX_ANF_VARS {
        return Err(AnfError::TooManyVars(n, MAX_ANF_VARS));
    }
    let mut coeffs: Vec<bool> = table.bits().to_vec();
    for bit in 0..n {
        let step = 1usize << bit;
        for row in 0..coeffs.len() {
            if row & step != 0 {
                coeffs[row] ^= coeffs[row ^ step];
            }
        }
    }
    let mut monomials = BTreeSet::new();
    for (row, &c) in coeffs.iter().enumerate() {
        if c {
            // row bit (n-1-p) corresponds to variable p+1 (input 1 is the
            // most significant table bit)
            let m: BTreeSet<usize> = (0..n).filter(|p| row >> (n - 1 - p) & 1 == 1).map(|p| p + 1).collect();
            monomials.insert(m);
        }
    }
    Ok(AnfPolynomial { vars: n, monomials })
}

/// The two-variable nonlinear core of a function: a constant substitution
/// for all variables but two under which the residual is exactly
/// `(xi ^ c1)(xj ^ c2) ^ c0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonlinearCore {
    /// 1-based index kept as the first core variable.
    pub i: usize,
    /// 1-based index kept as the second core variable.
    pub j: usize,
    /// Constant substitution for every other variable.
    pub assignment: BTreeMap<usize, bool>,
    pub c0: bool,
    pub c1: bool,
    pub c2: bool,
}

impl NonlinearCore {
    /// The residual function the core describes.
    pub fn residual(&self, xi: bool, xj: bool) -> bool {
        ((xi ^ self.c1) && (xj ^ self.c2)) ^ self.c0
    }
}

/// Extracts a nonlinear core, or `None` iff the function is linear.
///
/// Selection follows the substitution argument: among monomials of degree
/// at least two pick one of minimal degree (ties broken by variable order),
/// zero every variable outside it, keep its two smallest variables, and set
/// the rest of the monomial to one. The returned constants are verified
/// against the residual table by direct evaluation.
pub fn nonlinear_core(table: &TruthTable) -> Result<Option<NonlinearCore>, AnfError> {
    let n = table.vars();
    let poly = anf_of(table)?;
    let chosen = poly
        .monomials()
        .iter()
        .filter(|m| m.len() >= 2)
        .min_by_key(|m| (m.len(), (*m).clone()));
    let Some(chosen) = chosen else {
        return Ok(None);
    };

    let core_vars: Vec<usize> = chosen.iter().copied().collect();
    let (i, j) = (core_vars[0], core_vars[1]);
    let mut assignment = BTreeMap::new();
    for v in 1..=n {
        if v == i || v == j {
            continue;
        }
        assignment.insert(v, chosen.contains(&v));
    }

    // tabulate the residual over (xi, xj)
    let mut residual = [false; 4];
    let mut word = vec![false; n];
    for (row, r) in residual.iter_mut().enumerate() {
        for (&v, &b) in &assignment {
            word[v - 1] = b;
        }
        word[i - 1] = row >> 1 & 1 == 1;
        word[j - 1] = row & 1 == 1;
        *r = table.get_word(&word);
    }
    // residual = xi*xj ^ a*xi ^ b*xj ^ g  =>  (xi ^ b)(xj ^ a) ^ (g ^ a*b);
    // read the coefficients off the four residual values:
    //   r(0,0) = g, r(0,1) = b ^ g, r(1,0) = a ^ g, r(1,1) = 1 ^ a ^ b ^ g
    let g = residual[0];
    let b = residual[1] ^ g;
    let a = residual[2] ^ g;
    debug_assert_eq!(residual[3], true ^ a ^ b ^ g);
    let core = NonlinearCore {
        i,
        j,
        assignment,
        c0: g ^ (a && b),
        c1: b,
        c2: a,
    };
    // the substitution argument guarantees this; keep it checked
    for (row, &r) in residual.iter().enumerate() {
        let xi = row >> 1 & 1 == 1;
        let xj = row & 1 == 1;
        assert_eq!(core.residual(xi, xj), r, "core mismatch at ({xi},{xj})");
    }
    Ok(Some(core))
}
