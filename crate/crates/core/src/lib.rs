//! Schur-product cryptanalysis workbench.
//!
//! Finite-field linear algebra, GRS and one-point Hermitian codes, the
//! McEliece-type scheme built on random subcodes of them, error-correcting
//! pair decoding, and the closure attack that recovers the enclosing code
//! from a subcode.

#![allow(clippy::len_without_is_empty)]

pub mod attack;
pub mod code;
pub mod crypto;
pub mod ecp;
pub mod error;
pub mod experiment;
pub mod field;
pub mod grs;
pub mod hermitian;
pub mod io;
pub mod matrix;
pub mod rng;
pub mod sidelnikov;
pub mod spec;
pub mod subfield;

pub use code::{ClosureMethod, LinearCode};
pub use crypto::{decrypt, encrypt, keygen, Ciphertext, KeyPair, KeygenOptions, PublicKey, SecretKey};
pub use ecp::{build_ecp_grs, build_ecp_hermitian, ecp_decode, ecp_validate, EcpPair};
pub use error::{Error, Result};
pub use field::{ArithOp, Elem, Field};
pub use grs::GrsSpec;
pub use hermitian::{HermitianCurve, HermitianSpec};
pub use matrix::Matrix;
pub use spec::{CodeSpec, Family};
pub use attack::{
    attack_recover_code, attack_with_shortening, attack_with_shortening_sweep, distinguish, hermitian_full_attack,
    DistinguisherReport, Verdict,
};
pub use experiment::{write_csv, Experiment, ReportRow, Summary};
pub use sidelnikov::{grs_full_attack, recover_multipliers, ss_recover};
pub use subfield::{subfield_resistance, subfield_subcode, SubfieldReport};
