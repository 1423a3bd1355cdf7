use std::fmt;
use std::sync::Arc;

use crate::code::LinearCode;
use crate::field::Field;
use crate::grs::GrsSpec;
use crate::hermitian::HermitianSpec;

/// The secret algebraic structure behind an enclosing code `C(X, P, E)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodeSpec {
    Grs(GrsSpec),
    Hermitian(HermitianSpec),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Grs,
    Hermitian,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Grs => "grs",
            Family::Hermitian => "hermitian",
        })
    }
}

impl From<GrsSpec> for CodeSpec {
    fn from(s: GrsSpec) -> Self {
        CodeSpec::Grs(s)
    }
}

impl From<HermitianSpec> for CodeSpec {
    fn from(s: HermitianSpec) -> Self {
        CodeSpec::Hermitian(s)
    }
}

impl CodeSpec {
    pub fn family(&self) -> Family {
        match self {
            CodeSpec::Grs(_) => Family::Grs,
            CodeSpec::Hermitian(_) => Family::Hermitian,
        }
    }

    pub fn field(&self) -> &Arc<Field> {
        match self {
            CodeSpec::Grs(s) => s.field(),
            CodeSpec::Hermitian(s) => s.field(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            CodeSpec::Grs(s) => s.len(),
            CodeSpec::Hermitian(s) => s.len(),
        }
    }

    pub fn genus(&self) -> usize {
        match self {
            CodeSpec::Grs(_) => 0,
            CodeSpec::Hermitian(s) => s.genus(),
        }
    }

    /// `deg E`: `k − 1` for GRS, `m` for Hermitian.
    pub fn divisor_degree(&self) -> i64 {
        match self {
            CodeSpec::Grs(s) => s.dim() as i64 - 1,
            CodeSpec::Hermitian(s) => s.degree(),
        }
    }

    pub fn code(&self) -> LinearCode {
        match self {
            CodeSpec::Grs(s) => s.code(),
            CodeSpec::Hermitian(s) => s.code(),
        }
    }

    /// The code `C(X, P, 2E)` built directly from the structure.
    pub fn double_code(&self) -> LinearCode {
        match self {
            CodeSpec::Grs(s) => s.square_spec().code(),
            CodeSpec::Hermitian(s) => s.with_degree(2 * s.degree()).code(),
        }
    }

    /// Largest error weight the structural error-correcting pair handles.
    pub fn max_correctable(&self) -> Option<usize> {
        match self {
            CodeSpec::Grs(s) => Some(s.max_correctable()),
            CodeSpec::Hermitian(s) => s.max_correctable(),
        }
    }

    /// First two parameters of a report row: `(n, k)` for GRS, `(q0, m)`
    /// for Hermitian.
    pub fn report_params(&self) -> (i64, i64) {
        match self {
            CodeSpec::Grs(s) => (s.len() as i64, s.dim() as i64),
            CodeSpec::Hermitian(s) => (s.q0() as i64, s.degree()),
        }
    }
}
