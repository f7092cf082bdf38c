//! Python bindings: exact polynomial rings over Q and F_p with Groebner
//! bases, plus the problem-file runner for the colon-operation pipelines.

use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use itx::cli::{run_to_string, Options};
use itx::groebner;
use itx::monomial::MonomialOrder;
use itx::parse::{parse_poly, poly_to_string};
use itx::poly;
use itx::scalar::{is_prime_u64, FieldCtx};

fn order_from_str(name: &str) -> PyResult<MonomialOrder> {
    match name {
        "lex" => Ok(MonomialOrder::Lex),
        "grevlex" => Ok(MonomialOrder::GrevLex),
        other => Err(PyValueError::new_err(format!("unknown order `{other}`"))),
    }
}

/// An exact polynomial ring: variable names plus the coefficient field
/// ("rational", or "prime" with a modulus).
#[pyclass(name = "Ring")]
struct PyRing {
    inner: Arc<poly::Ring>,
    order: MonomialOrder,
}

/// One polynomial of a ring; arithmetic is exact and never rounds.
#[pyclass(name = "Poly")]
#[derive(Clone)]
struct PyPoly {
    ring: Arc<poly::Ring>,
    order: MonomialOrder,
    inner: poly::Poly,
}

impl PyPoly {
    fn check_same_ring(&self, other: &PyPoly) -> PyResult<()> {
        if self.ring != other.ring {
            return Err(PyValueError::new_err("operands belong to different rings"));
        }
        Ok(())
    }
}

#[pymethods]
impl PyRing {
    #[new]
    #[pyo3(signature = (vars, field = "rational", p = 0, order = "grevlex"))]
    fn new(vars: Vec<String>, field: &str, p: u64, order: &str) -> PyResult<Self> {
        let field = match field {
            "rational" => FieldCtx::Rat,
            "prime" => {
                if !is_prime_u64(p) {
                    return Err(PyValueError::new_err(format!("modulus {p} is not prime")));
                }
                FieldCtx::Fp(p)
            }
            other => return Err(PyValueError::new_err(format!("unknown field `{other}`"))),
        };
        Ok(PyRing { inner: poly::Ring::new(vars, field), order: order_from_str(order)? })
    }

    #[getter]
    fn vars(&self) -> Vec<String> {
        self.inner.vars.clone()
    }

    fn parse(&self, text: &str) -> PyResult<PyPoly> {
        let p = parse_poly(text, &self.inner)
            .map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(PyPoly {
            ring: self.inner.clone(),
            order: self.order.clone(),
            inner: p.resort(&self.order),
        })
    }

    fn var(&self, name: &str) -> PyResult<PyPoly> {
        let i = self
            .inner
            .var_index(name)
            .ok_or_else(|| PyValueError::new_err(format!("unknown variable `{name}`")))?;
        Ok(PyPoly {
            ring: self.inner.clone(),
            order: self.order.clone(),
            inner: self.inner.var_poly(i),
        })
    }

    /// The reduced Groebner basis of the ideal generated by `gens`.
    fn groebner_basis(&self, gens: Vec<PyRef<PyPoly>>) -> PyResult<Vec<PyPoly>> {
        let polys: Vec<poly::Poly> = gens.iter().map(|g| g.inner.clone()).collect();
        let gb = groebner::groebner_basis(&polys, &self.order);
        Ok(gb
            .gens
            .into_iter()
            .map(|g| PyPoly { ring: self.inner.clone(), order: self.order.clone(), inner: g })
            .collect())
    }

    /// The normal form of `p` against the Groebner basis of `gens`.
    fn normal_form(&self, p: &PyPoly, gens: Vec<PyRef<PyPoly>>) -> PyResult<PyPoly> {
        let polys: Vec<poly::Poly> = gens.iter().map(|g| g.inner.clone()).collect();
        let gb = groebner::groebner_basis(&polys, &self.order);
        Ok(PyPoly {
            ring: self.inner.clone(),
            order: self.order.clone(),
            inner: groebner::normal_form(&p.inner, &gb),
        })
    }

    fn __repr__(&self) -> String {
        format!("Ring({})", self.inner.vars.join(", "))
    }
}

#[pymethods]
impl PyPoly {
    fn __str__(&self) -> String {
        poly_to_string(&self.inner, &self.ring, &self.order)
    }

    fn __repr__(&self) -> String {
        self.__str__()
    }

    fn __add__(&self, other: &PyPoly) -> PyResult<PyPoly> {
        self.check_same_ring(other)?;
        Ok(PyPoly {
            ring: self.ring.clone(),
            order: self.order.clone(),
            inner: self.inner.add(&other.inner, &self.order),
        })
    }

    fn __sub__(&self, other: &PyPoly) -> PyResult<PyPoly> {
        self.check_same_ring(other)?;
        Ok(PyPoly {
            ring: self.ring.clone(),
            order: self.order.clone(),
            inner: self.inner.sub(&other.inner, &self.order),
        })
    }

    fn __mul__(&self, other: &PyPoly) -> PyResult<PyPoly> {
        self.check_same_ring(other)?;
        Ok(PyPoly {
            ring: self.ring.clone(),
            order: self.order.clone(),
            inner: self.inner.mul(&other.inner, &self.order),
        })
    }

    fn __pow__(&self, exp: i64, _modulo: Option<i64>) -> PyResult<PyPoly> {
        if exp < 0 {
            return Err(PyValueError::new_err("pow with negative exponent"));
        }
        let mut out = self.inner.pow(exp as u32, &self.order);
        if exp == 0 && out.is_zero() {
            out = poly::Poly::constant_in(self.ring.field.one(), self.ring.nvars());
        }
        Ok(PyPoly { ring: self.ring.clone(), order: self.order.clone(), inner: out })
    }

    fn __neg__(&self) -> PyPoly {
        PyPoly { ring: self.ring.clone(), order: self.order.clone(), inner: self.inner.neg() }
    }

    fn __eq__(&self, other: &PyPoly) -> bool {
        self.ring == other.ring && self.inner == other.inner.resort(&self.order)
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn total_degree(&self) -> u64 {
        self.inner.total_degree()
    }

    /// Substitute every variable by the image of the same name; images must
    /// share a target ring.
    fn substitute(&self, images: Vec<PyRef<PyPoly>>) -> PyResult<PyPoly> {
        if images.len() != self.ring.nvars() {
            return Err(PyValueError::new_err(format!(
                "need one image per variable ({} expected)",
                self.ring.nvars()
            )));
        }
        let target = images
            .first()
            .map(|p| (p.ring.clone(), p.order.clone()))
            .unwrap_or_else(|| (self.ring.clone(), self.order.clone()));
        for im in &images {
            if im.ring != target.0 {
                return Err(PyValueError::new_err("images belong to different rings"));
            }
        }
        let imgs: Vec<poly::Poly> = images.iter().map(|p| p.inner.clone()).collect();
        Ok(PyPoly {
            ring: target.0,
            order: target.1.clone(),
            inner: poly::substitute(&self.inner, &imgs, &target.1),
        })
    }
}

/// Run a problem file through a subcommand and return (json_document,
/// exit_code); exit code 0 means terminated, 2 means capped.
#[pyfunction]
#[pyo3(signature = (subcommand, text, max_iter = 32, order = "grevlex", strict_char0 = false))]
fn run_problem(
    subcommand: &str,
    text: &str,
    max_iter: usize,
    order: &str,
    strict_char0: bool,
) -> PyResult<(String, i32)> {
    let opts = Options {
        max_iter,
        order: order_from_str(order)?,
        json: true,
        strict_char0,
    };
    run_to_string(subcommand, text, &opts).map_err(PyValueError::new_err)
}

/// The available subcommands, in dispatch order.
#[pyfunction]
fn subcommands() -> Vec<String> {
    itx::cli::SUBCOMMANDS.iter().map(|s| s.to_string()).collect()
}

#[pymodule]
fn itx_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRing>()?;
    m.add_class::<PyPoly>()?;
    m.add_function(wrap_pyfunction!(run_problem, m)?)?;
    m.add_function(wrap_pyfunction!(subcommands, m)?)?;
    Ok(())
}
