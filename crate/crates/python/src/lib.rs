//! Python bindings for `gammares`.

use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;

use gammares::chainmaps::{self, ChainMap, MapProperty};
use gammares::complex::json;
use gammares::complex::{verify_resolution, StrandMode};
use gammares::constructions::{self, BuildOptions, SignMode};
use gammares::dg::{self, CheckBudget, DgAxiom};
use gammares::report::Check;
use gammares::scarf;
use gammares::{DGGammaAlgebra, Error, FreeComplex, Monomial, VarContext};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Io(_) => PyIOError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn options(max_divided_power: usize) -> BuildOptions {
    BuildOptions {
        max_divided_power,
        ..BuildOptions::default()
    }
}

fn budget(seed: u64, samples: usize) -> CheckBudget {
    CheckBudget {
        seed,
        samples,
        ..CheckBudget::default()
    }
}

fn parse_all(ctx: &VarContext, gens: &[String]) -> PyResult<Vec<Monomial>> {
    gens.iter().map(|g| ctx.parse(g).map_err(py_err)).collect()
}

fn sign_mode(s: &str) -> PyResult<SignMode> {
    match s {
        "corrected" => Ok(SignMode::Corrected),
        "unsigned" => Ok(SignMode::Unsigned),
        _ => Err(PyValueError::new_err(format!("unknown sign mode `{s}`"))),
    }
}

/// Outcome of one check.
#[pyclass(name = "Check", frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
struct PyCheck {
    name: String,
    passed: bool,
    /// `(location, lhs, rhs)` triples.
    violations: Vec<(String, String, String)>,
    notes: Vec<String>,
}

impl From<Check> for PyCheck {
    fn from(c: Check) -> Self {
        PyCheck {
            passed: c.passed(),
            name: c.name,
            violations: c.violations.into_iter().map(|v| (v.location, v.lhs, v.rhs)).collect(),
            notes: c.notes,
        }
    }
}

#[pymethods]
impl PyCheck {
    fn __repr__(&self) -> String {
        format!(
            "Check({}, {}, {} violations)",
            self.name,
            if self.passed { "pass" } else { "fail" },
            self.violations.len()
        )
    }
}

/// A free complex over a polynomial ring.
#[pyclass(name = "Complex", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyComplex(FreeComplex);

#[pymethods]
impl PyComplex {
    fn ranks(&self) -> Vec<usize> {
        self.0.ranks()
    }

    /// Basis element names in id order.
    fn names(&self) -> Vec<String> {
        self.0.basis().iter().map(|b| b.name.clone()).collect()
    }

    fn variables(&self) -> Vec<String> {
        self.0.ctx().names().to_vec()
    }

    /// `d(e_id)` as a string.
    fn differential(&self, id: usize) -> PyResult<String> {
        Ok(self.0.format_element(self.0.differential(id).map_err(py_err)?))
    }

    fn check_d_squared(&self) -> PyResult<PyCheck> {
        Ok(self.0.check_d_squared().map_err(py_err)?.into())
    }

    /// Exactness of every multigraded strand. `box_bound` switches to box
    /// mode with the given componentwise bound.
    #[pyo3(signature = (box_bound=None))]
    fn verify_resolution(&self, box_bound: Option<&str>) -> PyResult<PyCheck> {
        let mode = match box_bound {
            None => StrandMode::Lattice,
            Some(b) => StrandMode::Box {
                bound: self.0.ctx().parse(b).map_err(py_err)?,
                cap: gammares::complex::DEFAULT_BOX_CELL_CAP,
            },
        };
        Ok(verify_resolution(&self.0, &mode).map_err(py_err)?.into())
    }

    fn to_json(&self) -> PyResult<String> {
        json::export_complex(&self.0).map_err(py_err)
    }

    fn __repr__(&self) -> String {
        format!("Complex({}, ranks {:?})", chainmaps::construction_ref(&self.0), self.0.ranks())
    }
}

/// A resolution with its product and divided-power tables.
#[pyclass(name = "Algebra", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyAlgebra(DGGammaAlgebra);

#[pymethods]
impl PyAlgebra {
    #[getter]
    fn complex(&self) -> PyComplex {
        PyComplex(self.0.complex().clone())
    }

    fn ranks(&self) -> Vec<usize> {
        self.0.complex().ranks()
    }

    fn names(&self) -> Vec<String> {
        self.0.complex().basis().iter().map(|b| b.name.clone()).collect()
    }

    fn id_of(&self, name: &str) -> PyResult<usize> {
        self.0
            .complex()
            .basis()
            .iter()
            .find(|b| b.name == name)
            .map(|b| b.id)
            .ok_or_else(|| PyValueError::new_err(format!("no basis element `{name}`")))
    }

    /// The stored product of two basis elements, formatted.
    fn product(&self, a: usize, b: usize) -> PyResult<String> {
        let cx = self.0.complex();
        if a >= cx.len() || b >= cx.len() {
            return Err(PyValueError::new_err("basis id out of range"));
        }
        Ok(cx.format_element(&self.0.basis_product(a, b)))
    }

    /// The divided power `e_id^(k)`, formatted.
    fn divided_power(&self, id: usize, k: usize) -> PyResult<String> {
        let g = self.0.gamma_basis(id, k).map_err(py_err)?;
        Ok(self.0.complex().format_element(&g))
    }

    /// Runs one DG axiom check: leibniz, assoc, graded_comm, unit or odd_square.
    #[pyo3(signature = (axiom, seed=42, samples=200))]
    fn check_dg(&self, axiom: &str, seed: u64, samples: usize) -> PyResult<PyCheck> {
        let a = DgAxiom::ALL
            .into_iter()
            .find(|a| a.name() == axiom)
            .ok_or_else(|| PyValueError::new_err(format!("unknown axiom `{axiom}`")))?;
        Ok(dg::check_dg_axiom(&self.0, a, &budget(seed, samples)).map_err(py_err)?.into())
    }

    /// Runs divided-power axiom check `which` in 1..=6.
    #[pyo3(signature = (which, seed=42, samples=200))]
    fn check_gamma(&self, which: u8, seed: u64, samples: usize) -> PyResult<PyCheck> {
        Ok(dg::check_gamma_axiom(&self.0, which, &budget(seed, samples)).map_err(py_err)?.into())
    }

    /// Every DG and divided-power check.
    #[pyo3(signature = (seed=42, samples=200))]
    fn check_all(&self, seed: u64, samples: usize) -> PyResult<Vec<PyCheck>> {
        let b = budget(seed, samples);
        let mut out = dg::check_all_dg(&self.0, &b).map_err(py_err)?;
        out.extend(dg::check_all_gamma(&self.0, &b).map_err(py_err)?);
        Ok(out.into_iter().map(PyCheck::from).collect())
    }

    /// The Scarf subcomplex, for Taylor resolutions.
    fn scarf(&self) -> PyResult<PyComplex> {
        Ok(PyComplex(scarf::scarf_subcomplex(&self.0).map_err(py_err)?.induced().clone()))
    }

    /// Products of generators over each Scarf face and the even divided
    /// powers of Scarf elements.
    fn check_scarf(&self) -> PyResult<PyCheck> {
        let s = scarf::scarf_subcomplex(&self.0).map_err(py_err)?;
        Ok(scarf::check_scarf_gamma(&s).map_err(py_err)?.into())
    }

    fn to_json(&self) -> PyResult<String> {
        json::export_algebra(&self.0).map_err(py_err)
    }

    fn __repr__(&self) -> String {
        format!(
            "Algebra({}, ranks {:?})",
            chainmaps::construction_ref(self.0.complex()),
            self.0.complex().ranks()
        )
    }
}

/// A chain map between resolutions.
#[pyclass(name = "ChainMap", frozen)]
struct PyChainMap(ChainMap);

#[pymethods]
impl PyChainMap {
    /// Checks one property: chain, multiplicative, gamma, loc_invertible or iso.
    #[pyo3(signature = (prop, seed=42, samples=200))]
    fn check(&self, prop: &str, seed: u64, samples: usize) -> PyResult<PyCheck> {
        let p = MapProperty::parse(prop).map_err(py_err)?;
        Ok(self.0.check(p, &budget(seed, samples)).map_err(py_err)?.into())
    }

    /// The image of basis element `id`, formatted in the target.
    fn image(&self, id: usize) -> PyResult<String> {
        let x = self.0.image(id).map_err(py_err)?;
        Ok(self.0.target().complex().format_element(x))
    }

    /// True when the inverse exists and composing with it gives the identity.
    fn inverse_is_identity(&self) -> PyResult<bool> {
        let inv = self.0.inverse().map_err(py_err)?;
        Ok(self.0.then(&inv).map_err(py_err)?.is_identity())
    }
}

#[pyfunction]
#[pyo3(signature = (variables, generators, max_divided_power=3))]
fn taylor(variables: Vec<String>, generators: Vec<String>, max_divided_power: usize) -> PyResult<PyAlgebra> {
    let ctx = VarContext::new(&variables).map_err(py_err)?;
    let gens = parse_all(&ctx, &generators)?;
    Ok(PyAlgebra(constructions::taylor(&ctx, &gens, &options(max_divided_power)).map_err(py_err)?))
}

#[pyfunction]
#[pyo3(signature = (variables, generator, max_divided_power=3))]
fn koszul(variables: Vec<String>, generator: &str, max_divided_power: usize) -> PyResult<PyAlgebra> {
    let ctx = VarContext::new(&variables).map_err(py_err)?;
    let u = ctx.parse(generator).map_err(py_err)?;
    Ok(PyAlgebra(
        constructions::koszul_principal(&ctx, &u, &options(max_divided_power)).map_err(py_err)?,
    ))
}

fn unwrap_factors(factors: &[PyRef<'_, PyAlgebra>]) -> Vec<DGGammaAlgebra> {
    factors.iter().map(|f| f.0.clone()).collect()
}

/// The generalized Taylor (star) product of resolutions.
#[pyfunction]
#[pyo3(signature = (factors, sign_mode="corrected", max_divided_power=3))]
fn star(factors: Vec<PyRef<'_, PyAlgebra>>, sign_mode: &str, max_divided_power: usize) -> PyResult<PyAlgebra> {
    let fs = unwrap_factors(&factors);
    Ok(PyAlgebra(
        constructions::star_product(&fs, self::sign_mode(sign_mode)?, &options(max_divided_power)).map_err(py_err)?,
    ))
}

#[pyfunction]
#[pyo3(signature = (factors, max_divided_power=3))]
fn tensor(factors: Vec<PyRef<'_, PyAlgebra>>, max_divided_power: usize) -> PyResult<PyAlgebra> {
    let fs = unwrap_factors(&factors);
    Ok(PyAlgebra(
        constructions::tensor_product(&fs, &options(max_divided_power)).map_err(py_err)?,
    ))
}

/// The divided-power formula of a star product agrees across positive slots.
#[pyfunction]
fn check_slot_independence(factors: Vec<PyRef<'_, PyAlgebra>>, star: PyRef<'_, PyAlgebra>) -> PyResult<PyCheck> {
    let fs = unwrap_factors(&factors);
    let k = star.0.bound();
    Ok(constructions::check_slot_independence(&fs, &star.0, k).map_err(py_err)?.into())
}

/// The comparison map from a tensor product to the star product.
#[pyfunction]
fn comparison_map(tensor: PyRef<'_, PyAlgebra>, star: PyRef<'_, PyAlgebra>) -> PyResult<PyChainMap> {
    Ok(PyChainMap(chainmaps::comparison_map(&tensor.0, &star.0).map_err(py_err)?))
}

/// The isomorphism from a Taylor resolution to the star of Koszul complexes.
#[pyfunction]
fn taylor_iso(taylor: PyRef<'_, PyAlgebra>, star: PyRef<'_, PyAlgebra>) -> PyResult<PyChainMap> {
    Ok(PyChainMap(chainmaps::taylor_iso(&taylor.0, &star.0).map_err(py_err)?))
}

/// The inclusion of factor `slot` (zero-based) into a product.
#[pyfunction]
fn inclusion_map(factor: PyRef<'_, PyAlgebra>, product: PyRef<'_, PyAlgebra>, slot: usize) -> PyResult<PyChainMap> {
    Ok(PyChainMap(chainmaps::inclusion_map(&factor.0, &product.0, slot).map_err(py_err)?))
}

/// Parses a JSON document into an `Algebra` or a `Complex`.
#[pyfunction]
fn from_json(py: Python<'_>, text: &str) -> PyResult<Py<PyAny>> {
    Ok(match json::import(text).map_err(py_err)? {
        json::Document::Algebra(a) => Py::new(py, PyAlgebra(a))?.into_any(),
        json::Document::Complex(c) => Py::new(py, PyComplex(c))?.into_any(),
    })
}

/// `m = u * sqf` with `sqf` squarefree, as formatted monomials.
#[pyfunction]
fn sqf_decompose(variables: Vec<String>, monomial: &str) -> PyResult<(String, String)> {
    let ctx = VarContext::new(&variables).map_err(py_err)?;
    let m = ctx.parse(monomial).map_err(py_err)?;
    let d = scarf::sqf_decompose(&m);
    Ok((d.u.format(&ctx), d.sqf.format(&ctx)))
}

#[pymodule]
fn gammares_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCheck>()?;
    m.add_class::<PyComplex>()?;
    m.add_class::<PyAlgebra>()?;
    m.add_class::<PyChainMap>()?;
    m.add_function(wrap_pyfunction!(taylor, m)?)?;
    m.add_function(wrap_pyfunction!(koszul, m)?)?;
    m.add_function(wrap_pyfunction!(star, m)?)?;
    m.add_function(wrap_pyfunction!(tensor, m)?)?;
    m.add_function(wrap_pyfunction!(check_slot_independence, m)?)?;
    m.add_function(wrap_pyfunction!(comparison_map, m)?)?;
    m.add_function(wrap_pyfunction!(taylor_iso, m)?)?;
    m.add_function(wrap_pyfunction!(inclusion_map, m)?)?;
    m.add_function(wrap_pyfunction!(from_json, m)?)?;
    m.add_function(wrap_pyfunction!(sqf_decompose, m)?)?;
    Ok(())
}
