//! Boolean truth tables and their hex text form.
//!
//! Rows are indexed big-endian by input position: the word `(x1, ..., xn)`
//! selects row `x1*2^(n-1) + ... + xn`, so input 1 carries the highest
//! weight. The hex form lists rows starting from row 0, four rows per
//! digit, with row 0 in the digit's most significant bit. `AND` on two
//! variables is `"1"`, `OR` is `"7"`, `XOR` is `"6"`.

use crate::ternary::{Tern, TernWord};
use thiserror::Error;

/// Largest variable count a table will hold (2^20 rows).
pub const MAX_TABLE_VARS: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableError {
    #[error("truth table on {vars} variables needs {expected} bits, got {got}")]
    LengthMismatch {
        vars: usize,
        expected: usize,
        got: usize,
    },
    #[error("hex table on {vars} variables needs {expected} digits, got {got}")]
    HexLength {
        vars: usize,
        expected: usize,
        got: usize,
    },
    #[error("invalid hex digit '{0}'")]
    BadHexDigit(char),
    #[error("hex table has nonzero bits past row 2^{0}")]
    NonzeroPadding(usize),
    #[error("too many variables: {0} (limit {1})")]
    TooManyVars(usize, usize),
}

/// A complete truth table of a Boolean function on `vars` inputs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    vars: usize,
    bits: Vec<bool>,
}

impl TruthTable {
    pub fn new(vars: usize, bits: Vec<bool>) -> Result<Self, TableError> {
        if vars > MAX_TABLE_VARS {
            return Err(TableError::TooManyVars(vars, MAX_TABLE_VARS));
        }
        let expected = 1usize << vars;
        if bits.len() != expected {
            return Err(TableError::LengthMismatch {
                vars,
                expected,
                got: bits.len(),
            });
        }
        Ok(Self { vars, bits })
    }

    pub fn constant(vars: usize, value: bool) -> Result<Self, TableError> {
        Self::new(vars, vec![value; 1usize << vars])
    }

    /// Tabulates `f` over all 2^vars input words, row order as documented.
    pub fn from_fn(vars: usize, f: impl Fn(&[bool]) -> bool) -> Result<Self, TableError> {
        if vars > MAX_TABLE_VARS {
            return Err(TableError::TooManyVars(vars, MAX_TABLE_VARS));
        }
        let mut bits = Vec::with_capacity(1usize << vars);
        let mut word = vec![false; vars];
        for row in 0..1usize << vars {
            for (p, w) in word.iter_mut().enumerate() {
                *w = (row >> (vars - 1 - p)) & 1 == 1;
            }
            bits.push(f(&word));
        }
        Ok(Self { vars, bits })
    }

    pub fn from_hex(vars: usize, hex: &str) -> Result<Self, TableError> {
        if vars > MAX_TABLE_VARS {
            return Err(TableError::TooManyVars(vars, MAX_TABLE_VARS));
        }
        let rows = 1usize << vars;
        let expected = rows.div_ceil(4);
        let digits: Vec<char> = hex.chars().collect();
        if digits.len() != expected {
            return Err(TableError::HexLength {
                vars,
                expected,
                got: digits.len(),
            });
        }
        let mut bits = vec![false; rows];
        for (d, ch) in digits.iter().enumerate() {
            let v = ch.to_digit(16).ok_or(TableError::BadHexDigit(*ch))? as usize;
            for b in 0..4 {
                let row = 4 * d + b;
                let bit = v >> (3 - b) & 1 == 1;
                if row < rows {
                    bits[row] = bit;
                } else if bit {
                    return Err(TableError::NonzeroPadding(vars));
                }
            }
        }
        Ok(Self { vars, bits })
    }

    pub fn to_hex(&self) -> String {
        let rows = self.bits.len();
        let mut s = String::with_capacity(rows.div_ceil(4));
        for d in 0..rows.div_ceil(4) {
            let mut v = 0u32;
            for b in 0..4 {
                let row = 4 * d + b;
                if row < rows && self.bits[row] {
                    v |= 1 << (3 - b);
                }
            }
            s.push(char::from_digit(v, 16).unwrap());
        }
        s
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn get(&self, row: usize) -> bool {
        self.bits[row]
    }

    /// Row index of a Boolean input word (input 1 is the highest bit).
    pub fn row_of(word: &[bool]) -> usize {
        word.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
    }

    pub fn get_word(&self, word: &[bool]) -> bool {
        assert_eq!(word.len(), self.vars, "input word width mismatch");
        self.bits[Self::row_of(word)]
    }

    pub fn is_constant(&self) -> Option<bool> {
        let first = self.bits[0];
        self.bits.iter().all(|&b| b == first).then_some(first)
    }

    /// The hazard-free extension of the tabulated function, evaluated by
    /// enumerating all resolutions of `w`. Stable iff every resolution
    /// agrees; mixing short-circuits.
    pub fn extension(&self, w: &TernWord) -> Tern {
        assert_eq!(w.len(), self.vars, "input word width mismatch");
        let mut base = 0usize;
        let mut unstable = Vec::new();
        for (p, d) in w.digits().iter().enumerate() {
            match d {
                Tern::One => base |= 1 << (self.vars - 1 - p),
                Tern::U => unstable.push(self.vars - 1 - p),
                Tern::Zero => {}
            }
        }
        let first = self.bits[base];
        for mask in 1u64..1 << unstable.len() {
            let mut row = base;
            for (q, shift) in unstable.iter().enumerate() {
                if mask >> q & 1 == 1 {
                    row |= 1 << shift;
                }
            }
            if self.bits[row] != first {
                return Tern::U;
            }
        }
        Tern::from_bool(first)
    }
}
