use ccz_fountain::fountain::{lightcone_distance_bound, scaling_fit as fit_scaling, GATE_ARITY};
use ccz_fountain::hypergraph::greedy_color_traced;
use ccz_fountain::io::CodeBundle;
use ccz_fountain::phaseverify::{
    check_wirewise_phase, extract_logical_action, DiagonalCircuit, DEFAULT_PHASE_CUTOFF,
};
use ccz_fountain::{
    enumerate_triples, fixtures, pack_supports, run_pipeline as run, sample_triples as sample,
    schedule_from_coloring, verify_coloring, verify_magic_friendly, BitMatrix, BitVector,
    GatePattern, Hypergraph3, MagicFriendlyTriple, PipelineOptions, SearchBudget, Strategy,
    DEFAULT_DISTANCE_CUTOFF,
};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyAny;
use serde::Serialize;

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Serializes through JSON so Python receives plain dicts and lists.
fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(err)?;
    py.import("json")?.call_method1("loads", (text,))
}

fn bits(s: &str) -> PyResult<BitVector> {
    s.parse().map_err(err)
}

fn matrix(n: usize, rows: Vec<Vec<u8>>) -> PyResult<BitMatrix> {
    let rows = rows
        .iter()
        .map(|r| BitVector::from_u8s(r))
        .collect::<Result<Vec<_>, _>>()
        .map_err(err)?;
    BitMatrix::from_rows(n, rows).map_err(err)
}

type Triple = (String, String, String);

fn triple_strings(t: &MagicFriendlyTriple) -> Triple {
    (t.x().to_string(), t.y().to_string(), t.z().to_string())
}

/// A CSS code given by its X and Z stabilizer generator rows (0/1 lists).
#[pyclass(name = "CssCode", frozen)]
struct PyCssCode {
    inner: ccz_fountain::CssCode,
}

#[pymethods]
impl PyCssCode {
    #[new]
    #[pyo3(signature = (n, s_x, s_z))]
    fn new(n: usize, s_x: Vec<Vec<u8>>, s_z: Vec<Vec<u8>>) -> PyResult<Self> {
        let inner = ccz_fountain::CssCode::new(matrix(n, s_x)?, matrix(n, s_z)?).map_err(err)?;
        Ok(Self { inner })
    }

    /// Parses a JSON bundle {"n", "s_x", "s_z"}.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let bundle: CodeBundle = serde_json::from_str(text).map_err(err)?;
        Ok(Self {
            inner: bundle.to_code().map_err(err)?,
        })
    }

    #[staticmethod]
    fn steane() -> Self {
        Self {
            inner: fixtures::steane(),
        }
    }

    #[staticmethod]
    fn trivial(n: usize) -> PyResult<Self> {
        if n == 0 {
            return Err(PyValueError::new_err("n must be positive"));
        }
        Ok(Self {
            inner: fixtures::trivial(n),
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.num_logicals()
    }

    #[getter]
    fn rank_x(&self) -> usize {
        self.inner.rank_x()
    }

    #[getter]
    fn rank_z(&self) -> usize {
        self.inner.rank_z()
    }

    fn logical_x_basis(&self) -> Vec<String> {
        self.inner
            .logical_x_basis()
            .iter()
            .map(ToString::to_string)
            .collect()
    }

    #[pyo3(signature = (cutoff = DEFAULT_DISTANCE_CUTOFF))]
    fn distance<'py>(&self, py: Python<'py>, cutoff: u64) -> PyResult<Bound<'py, PyAny>> {
        let report = py.detach(|| self.inner.distance_exact(cutoff));
        to_py(py, &report)
    }

    fn verify_triple<'py>(
        &self,
        py: Python<'py>,
        x: &str,
        y: &str,
        z: &str,
    ) -> PyResult<Bound<'py, PyAny>> {
        let r = verify_magic_friendly(&self.inner, &bits(x)?, &bits(y)?, &bits(z)?).map_err(err)?;
        to_py(py, &r)
    }

    /// Exhaustive triple search; returns (x, y, z) bit strings.
    #[pyo3(signature = (budget = 1_000_000, max_results = 100_000, shift = 0))]
    fn search_triples(
        &self,
        py: Python<'_>,
        budget: u64,
        max_results: usize,
        shift: usize,
    ) -> Vec<Triple> {
        let b = SearchBudget {
            max_examined: budget,
            max_results,
            stabilizer_shift: shift,
            ..SearchBudget::default()
        };
        let s = py.detach(|| enumerate_triples(&self.inner, &b));
        s.triples.iter().map(triple_strings).collect()
    }

    #[pyo3(signature = (seed, attempts))]
    fn sample_triples(&self, seed: u64, attempts: u64) -> Vec<Triple> {
        sample(&self.inner, seed, attempts)
            .iter()
            .map(triple_strings)
            .collect()
    }

    fn __repr__(&self) -> String {
        format!(
            "CssCode(n={}, k={})",
            self.inner.n(),
            self.inner.num_logicals()
        )
    }
}

/// Greedy packing of 1-based support sets on `n` coordinates.
#[pyfunction]
fn greedy_pack<'py>(
    py: Python<'py>,
    supports: Vec<Vec<usize>>,
    n: usize,
) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &pack_supports(&supports, n).map_err(err)?)
}

/// Greedy coloring of a 3-uniform hypergraph plus its verdict.
#[pyfunction]
fn greedy_color<'py>(
    py: Python<'py>,
    vertex_count: usize,
    edges: Vec<[usize; 3]>,
) -> PyResult<Bound<'py, PyAny>> {
    let h = Hypergraph3::new(vertex_count, edges).map_err(err)?;
    let (coloring, _) = greedy_color_traced(&h);
    let verdict = verify_coloring(&h, &coloring);
    #[derive(Serialize)]
    struct Out<'a> {
        color_of: &'a [usize],
        palette: usize,
        max_degree: usize,
        proper: bool,
        palette_bound: usize,
    }
    to_py(
        py,
        &Out {
            color_of: &coloring.color_of,
            palette: coloring.palette,
            max_degree: h.max_degree(),
            proper: verdict.proper,
            palette_bound: verdict.palette_bound,
        },
    )
}

/// Layers of the greedy coloring, empty classes removed.
#[pyfunction]
fn schedule(vertex_count: usize, edges: Vec<[usize; 3]>) -> PyResult<Vec<Vec<[usize; 3]>>> {
    let h = Hypergraph3::new(vertex_count, edges).map_err(err)?;
    let (coloring, _) = greedy_color_traced(&h);
    Ok(schedule_from_coloring(&h, &coloring).map_err(err)?.layers)
}

/// Pack, expand, color and schedule `triples` on `code`.
#[pyfunction]
#[pyo3(signature = (code, triples, strategy = "wirewise-full"))]
fn run_pipeline<'py>(
    py: Python<'py>,
    code: &PyCssCode,
    triples: Vec<Triple>,
    strategy: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let strategy: Strategy = strategy.parse().map_err(PyValueError::new_err)?;
    let pattern = GatePattern::for_strategy(strategy, code.inner.n()).map_err(err)?;
    let triples = triples
        .iter()
        .map(|(x, y, z)| {
            MagicFriendlyTriple::new(&code.inner, bits(x)?, bits(y)?, bits(z)?).map_err(err)
        })
        .collect::<PyResult<Vec<_>>>()?;
    let report = run(&code.inner, &triples, &pattern, &PipelineOptions::default()).map_err(err)?;
    to_py(py, &report)
}

#[pyfunction]
fn wirewise_phase<'py>(py: Python<'py>, x: &str, y: &str, z: &str) -> PyResult<Bound<'py, PyAny>> {
    to_py(
        py,
        &check_wirewise_phase(&bits(x)?, &bits(y)?, &bits(z)?).map_err(err)?,
    )
}

/// Logical phase polynomial of the wirewise CCZ layer in the triple's basis.
#[pyfunction]
fn logical_action<'py>(
    py: Python<'py>,
    code: &PyCssCode,
    x: &str,
    y: &str,
    z: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let triple =
        MagicFriendlyTriple::new(&code.inner, bits(x)?, bits(y)?, bits(z)?).map_err(err)?;
    let circuit = DiagonalCircuit::wirewise(code.inner.n());
    let action = extract_logical_action(&code.inner, &triple, &circuit, DEFAULT_PHASE_CUTOFF)
        .map_err(err)?;
    let out = to_py(py, &action)?;
    out.set_item("display", action.to_string())?;
    Ok(out)
}

/// d / 3^depth as (numerator, denominator) and its floor clamped to 1.
#[pyfunction]
fn distance_bound(d: u64, depth: u32) -> PyResult<((String, String), u64)> {
    let b = lightcone_distance_bound(d, GATE_ARITY, depth).map_err(err)?;
    Ok((
        (b.exact.numer().to_string(), b.exact.denom().to_string()),
        b.floor,
    ))
}

#[pyfunction]
fn scaling_fit<'py>(py: Python<'py>, points: Vec<(f64, f64)>) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &fit_scaling(&points).map_err(err)?)
}

#[pymodule]
fn ccz_fountain_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCssCode>()?;
    m.add_function(wrap_pyfunction!(greedy_pack, m)?)?;
    m.add_function(wrap_pyfunction!(greedy_color, m)?)?;
    m.add_function(wrap_pyfunction!(schedule, m)?)?;
    m.add_function(wrap_pyfunction!(run_pipeline, m)?)?;
    m.add_function(wrap_pyfunction!(wirewise_phase, m)?)?;
    m.add_function(wrap_pyfunction!(logical_action, m)?)?;
    m.add_function(wrap_pyfunction!(distance_bound, m)?)?;
    m.add_function(wrap_pyfunction!(scaling_fit, m)?)?;
    Ok(())
}
