//! Python bindings.

use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use schurcodes::crypto::{self, KeygenOptions, MessageDecoder};
use schurcodes::{io, CodeSpec, Elem, Error};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "Field", module = "schurcodes", frozen, skip_from_py_object)]
#[derive(Clone)]
struct Field(Arc<schurcodes::Field>);

#[pymethods]
impl Field {
    #[new]
    fn new(order: u32) -> PyResult<Self> {
        schurcodes::Field::of_order(order).map(Field).map_err(err)
    }

    #[staticmethod]
    fn from_line(line: &str) -> PyResult<Self> {
        io::parse_field_line(line).map(Field).map_err(err)
    }

    #[getter]
    fn order(&self) -> u32 {
        self.0.order()
    }

    #[getter]
    fn characteristic(&self) -> u32 {
        self.0.characteristic()
    }

    #[getter]
    fn degree(&self) -> u32 {
        self.0.degree()
    }

    #[getter]
    fn modulus(&self) -> Vec<u32> {
        self.0.modulus().to_vec()
    }

    #[getter]
    fn primitive(&self) -> Elem {
        self.0.primitive()
    }

    fn add(&self, a: u32, b: u32) -> PyResult<Elem> {
        Ok(self.0.add(self.0.check(a).map_err(err)?, self.0.check(b).map_err(err)?))
    }

    fn mul(&self, a: u32, b: u32) -> PyResult<Elem> {
        Ok(self.0.mul(self.0.check(a).map_err(err)?, self.0.check(b).map_err(err)?))
    }

    fn inv(&self, a: u32) -> PyResult<Elem> {
        self.0.inv(self.0.check(a).map_err(err)?).map_err(err)
    }

    fn pow(&self, a: u32, e: u64) -> PyResult<Elem> {
        Ok(self.0.pow(self.0.check(a).map_err(err)?, e))
    }

    fn __eq__(&self, other: &Field) -> bool {
        *self.0 == *other.0
    }

    fn __repr__(&self) -> String {
        self.0.to_string()
    }
}

fn to_matrix(field: &Arc<schurcodes::Field>, rows: Vec<Vec<u32>>, cols: usize) -> PyResult<schurcodes::Matrix> {
    let rows: Vec<Vec<Elem>> = rows
        .into_iter()
        .map(|r| r.into_iter().map(|x| field.check(x)).collect::<schurcodes::Result<_>>())
        .collect::<schurcodes::Result<_>>()
        .map_err(err)?;
    schurcodes::Matrix::from_rows(field, cols, &rows).map_err(err)
}

fn check_vec(field: &schurcodes::Field, v: Vec<u32>) -> PyResult<Vec<Elem>> {
    v.into_iter().map(|x| field.check(x).map_err(err)).collect()
}

#[pyclass(name = "LinearCode", module = "schurcodes", frozen, skip_from_py_object)]
#[derive(Clone)]
struct LinearCode(schurcodes::LinearCode);

#[pymethods]
impl LinearCode {
    /// Span of the given rows, each of length `n`.
    #[new]
    fn new(field: &Field, n: usize, rows: Vec<Vec<u32>>) -> PyResult<Self> {
        Ok(LinearCode(schurcodes::LinearCode::span_of(&to_matrix(&field.0, rows, n)?)))
    }

    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        io::parse_code(text).map(LinearCode).map_err(err)
    }

    fn to_text(&self) -> String {
        io::write_code(&self.0)
    }

    #[getter]
    fn field(&self) -> Field {
        Field(self.0.field().clone())
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.len()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    /// Reduced row echelon generator rows.
    fn generator(&self) -> Vec<Vec<Elem>> {
        self.0.generator().to_rows()
    }

    fn contains(&self, other: &LinearCode) -> PyResult<bool> {
        self.0.contains(&other.0).map_err(err)
    }

    fn contains_word(&self, word: Vec<u32>) -> PyResult<bool> {
        Ok(self.0.contains_word(&check_vec(self.0.field(), word)?))
    }

    fn dual(&self) -> Self {
        LinearCode(self.0.dual())
    }

    fn schur(&self, other: &LinearCode) -> PyResult<Self> {
        self.0.schur(&other.0).map(LinearCode).map_err(err)
    }

    fn square(&self) -> Self {
        LinearCode(self.0.square())
    }

    fn power(&self, t: usize) -> PyResult<Self> {
        self.0.power(t).map(LinearCode).map_err(err)
    }

    #[pyo3(signature = (t = 2))]
    fn closure(&self, t: usize) -> PyResult<Self> {
        self.0.closure(t).map(LinearCode).map_err(err)
    }

    fn shorten(&self, positions: Vec<usize>) -> PyResult<Self> {
        self.0.shorten(&positions).map(LinearCode).map_err(err)
    }

    fn puncture(&self, positions: Vec<usize>) -> PyResult<Self> {
        self.0.puncture(&positions).map(LinearCode).map_err(err)
    }

    fn random_subcode(&self, l: usize, seed: u64) -> PyResult<Self> {
        self.0.random_subcode(l, seed).map(LinearCode).map_err(err)
    }

    fn __eq__(&self, other: &LinearCode) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("LinearCode(n={}, k={}, {})", self.0.len(), self.0.dim(), self.0.field())
    }
}

#[pyclass(name = "GrsSpec", module = "schurcodes", frozen, from_py_object)]
#[derive(Clone)]
struct GrsSpec(schurcodes::GrsSpec);

#[pymethods]
impl GrsSpec {
    #[new]
    fn new(field: &Field, points: Vec<u32>, multipliers: Vec<u32>, k: usize) -> PyResult<Self> {
        let a = check_vec(&field.0, points)?;
        let b = check_vec(&field.0, multipliers)?;
        schurcodes::GrsSpec::new(&field.0, a, b, k).map(GrsSpec).map_err(err)
    }

    #[staticmethod]
    fn random(field: &Field, n: usize, k: usize, seed: u64) -> PyResult<Self> {
        schurcodes::GrsSpec::random(&field.0, n, k, seed).map(GrsSpec).map_err(err)
    }

    #[getter]
    fn points(&self) -> Vec<Elem> {
        self.0.points().to_vec()
    }

    #[getter]
    fn multipliers(&self) -> Vec<Elem> {
        self.0.multipliers().to_vec()
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.len()
    }

    #[getter]
    fn k(&self) -> usize {
        self.0.dim()
    }

    fn code(&self) -> LinearCode {
        LinearCode(self.0.code())
    }

    fn square_spec(&self) -> Self {
        GrsSpec(self.0.square_spec())
    }

    fn __repr__(&self) -> String {
        format!("GrsSpec(n={}, k={}, {})", self.0.len(), self.0.dim(), self.0.field())
    }
}

#[pyclass(name = "HermitianSpec", module = "schurcodes", frozen, from_py_object)]
#[derive(Clone)]
struct HermitianSpec(schurcodes::HermitianSpec);

#[pymethods]
impl HermitianSpec {
    #[new]
    fn new(q0: u32, m: i64) -> PyResult<Self> {
        schurcodes::HermitianSpec::new(q0, m).map(HermitianSpec).map_err(err)
    }

    #[getter]
    fn q0(&self) -> u32 {
        self.0.q0()
    }

    #[getter]
    fn m(&self) -> i64 {
        self.0.degree()
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.len()
    }

    #[getter]
    fn genus(&self) -> usize {
        self.0.genus()
    }

    #[getter]
    fn field(&self) -> Field {
        Field(self.0.field().clone())
    }

    fn code(&self) -> LinearCode {
        LinearCode(self.0.code())
    }

    fn dual(&self) -> Self {
        HermitianSpec(self.0.dual())
    }

    fn with_degree(&self, m: i64) -> Self {
        HermitianSpec(self.0.with_degree(m))
    }

    fn __repr__(&self) -> String {
        format!("HermitianSpec(q0={}, m={})", self.0.q0(), self.0.degree())
    }
}

fn spec_of(obj: &Bound<'_, PyAny>) -> PyResult<CodeSpec> {
    if let Ok(s) = obj.extract::<GrsSpec>() {
        return Ok(s.0.into());
    }
    if let Ok(s) = obj.extract::<HermitianSpec>() {
        return Ok(s.0.into());
    }
    Err(PyValueError::new_err("expected a GrsSpec or a HermitianSpec"))
}

#[pyclass(name = "PublicKey", module = "schurcodes", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PublicKey(schurcodes::PublicKey);

#[pymethods]
impl PublicKey {
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        io::parse_public_key(text).map(PublicKey).map_err(err)
    }

    fn to_text(&self) -> String {
        io::write_public_key(&self.0)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.len()
    }

    #[getter]
    fn l(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn t(&self) -> usize {
        self.0.t()
    }

    #[getter]
    fn field(&self) -> Field {
        Field(self.0.field().clone())
    }

    fn code(&self) -> LinearCode {
        LinearCode(self.0.code())
    }

    fn generator(&self) -> Vec<Vec<Elem>> {
        self.0.generator().to_rows()
    }
}

#[pyclass(name = "SecretKey", module = "schurcodes", frozen, skip_from_py_object)]
#[derive(Clone)]
struct SecretKey(schurcodes::SecretKey);

#[pymethods]
impl SecretKey {
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        io::parse_secret_key(text).map(SecretKey).map_err(err)
    }

    fn to_text(&self) -> String {
        io::write_secret_key(&self.0)
    }

    #[getter]
    fn t(&self) -> usize {
        self.0.t()
    }

    fn enclosing_code(&self) -> LinearCode {
        LinearCode(self.0.enclosing_code())
    }
}

/// Returns `(public_key, secret_key)`.
#[pyfunction]
#[pyo3(signature = (spec, l, seed, t = None, permute = false))]
fn keygen(spec: &Bound<'_, PyAny>, l: usize, seed: u64, t: Option<usize>, permute: bool) -> PyResult<(PublicKey, SecretKey)> {
    let kp = crypto::keygen(&spec_of(spec)?, l, seed, KeygenOptions { t, permute }).map_err(err)?;
    Ok((PublicKey(kp.public), SecretKey(kp.secret)))
}

/// Returns the ciphertext word.
#[pyfunction]
fn encrypt(pk: &PublicKey, msg: Vec<u32>, seed: u64) -> PyResult<Vec<Elem>> {
    let msg = check_vec(pk.0.field(), msg)?;
    crypto::encrypt(&pk.0, &msg, seed).map(|c| c.word().to_vec()).map_err(err)
}

fn ciphertext(field: &Arc<schurcodes::Field>, word: Vec<u32>) -> PyResult<schurcodes::Ciphertext> {
    schurcodes::Ciphertext::new(field, check_vec(field, word)?).map_err(err)
}

#[pyfunction]
fn decrypt(sk: &SecretKey, ct: Vec<u32>) -> PyResult<Vec<Elem>> {
    crypto::decrypt(&sk.0, &ciphertext(sk.0.spec().field(), ct)?).map_err(err)
}

#[pyclass(name = "DistinguisherReport", module = "schurcodes", frozen, get_all)]
struct DistinguisherReport {
    n: usize,
    l: usize,
    sq_dim: usize,
    random_expectation: usize,
    verdict: String,
}

#[pyfunction]
fn distinguish(code: &LinearCode) -> DistinguisherReport {
    let r = schurcodes::distinguish(&code.0);
    DistinguisherReport {
        n: r.n,
        l: r.l,
        sq_dim: r.sq_dim,
        random_expectation: r.random_expectation,
        verdict: r.verdict.to_string(),
    }
}

/// The 2-closure of a public code; returns `(code, degenerate)`.
#[pyfunction]
fn attack_recover_code(code: &LinearCode) -> (LinearCode, bool) {
    let out = schurcodes::attack_recover_code(&code.0);
    (LinearCode(out.code), out.degenerate)
}

#[pyfunction]
fn attack_with_shortening(code: &LinearCode, s: usize, trials: usize, seed: u64) -> PyResult<LinearCode> {
    schurcodes::attack_with_shortening(&code.0, s, trials, seed).map(|o| LinearCode(o.code)).map_err(err)
}

/// A decoder built by an attack from public data.
#[pyclass(name = "RecoveredDecoder", module = "schurcodes", frozen)]
struct RecoveredDecoder {
    decoder: MessageDecoder,
    recovered: schurcodes::LinearCode,
    field: Arc<schurcodes::Field>,
}

#[pymethods]
impl RecoveredDecoder {
    fn recovered_code(&self) -> LinearCode {
        LinearCode(self.recovered.clone())
    }

    fn decrypt(&self, ct: Vec<u32>) -> PyResult<Vec<Elem>> {
        self.decoder.decrypt(&ciphertext(&self.field, ct)?).map_err(err)
    }
}

#[pyfunction]
fn grs_full_attack(pk: &PublicKey) -> PyResult<RecoveredDecoder> {
    let a = schurcodes::grs_full_attack(&pk.0).map_err(err)?;
    Ok(RecoveredDecoder { recovered: a.recovered.spec.code(), decoder: a.decoder, field: pk.0.field().clone() })
}

#[pyfunction]
#[pyo3(signature = (pk, oracle, shortening_trials = 8, seed = 0))]
fn hermitian_full_attack(
    pk: &PublicKey,
    oracle: &HermitianSpec,
    shortening_trials: usize,
    seed: u64,
) -> PyResult<RecoveredDecoder> {
    let a = schurcodes::hermitian_full_attack(&pk.0, &oracle.0, shortening_trials, seed).map_err(err)?;
    Ok(RecoveredDecoder { recovered: a.recovered, decoder: a.decoder, field: pk.0.field().clone() })
}

#[pymodule(name = "schurcodes")]
fn schurcodes_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Field>()?;
    m.add_class::<LinearCode>()?;
    m.add_class::<GrsSpec>()?;
    m.add_class::<HermitianSpec>()?;
    m.add_class::<PublicKey>()?;
    m.add_class::<SecretKey>()?;
    m.add_class::<DistinguisherReport>()?;
    m.add_class::<RecoveredDecoder>()?;
    m.add_function(wrap_pyfunction!(keygen, m)?)?;
    m.add_function(wrap_pyfunction!(encrypt, m)?)?;
    m.add_function(wrap_pyfunction!(decrypt, m)?)?;
    m.add_function(wrap_pyfunction!(distinguish, m)?)?;
    m.add_function(wrap_pyfunction!(attack_recover_code, m)?)?;
    m.add_function(wrap_pyfunction!(attack_with_shortening, m)?)?;
    m.add_function(wrap_pyfunction!(grs_full_attack, m)?)?;
    m.add_function(wrap_pyfunction!(hermitian_full_attack, m)?)?;
    Ok(())
}
