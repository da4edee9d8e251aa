use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quantum::ComplexAmp;
use crate::TOL;

/// Named unitary acting on one or two qubits. The matrix is row-major over
/// the local basis where `targets[0]` is the most significant bit.
#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    name: String,
    arity: usize,
    matrix: Vec<ComplexAmp>,
}

/// Names accepted by [`standard_gate`].
pub const STANDARD_GATES: &[&str] = &[
    "I", "X", "Y", "Z", "H", "S", "Sdag", "V", "Vdag", "CNOT", "CV", "CVdag",
];

/// Names accepted by [`rotation_gate`].
pub const ROTATION_GATES: &[&str] = &["Rx", "Ry", "Rz"];

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

impl Gate {
    /// Builds a gate after checking `U†U = I` within `1e-9`.
    pub fn new(name: impl Into<String>, arity: usize, matrix: Vec<ComplexAmp>) -> Result<Self> {
        let name = name.into();
        if !(1..=2).contains(&arity) {
            return Err(Error::ArityMismatch {
                name,
                arity,
                given: arity,
            });
        }
        let dim = 1 << arity;
        if matrix.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                got: matrix.len(),
            });
        }
        if matrix
            .iter()
            .any(|a| !a.re.is_finite() || !a.im.is_finite())
        {
            return Err(Error::NonFinite("gate matrix"));
        }
        let gate = Self {
            name,
            arity,
            matrix,
        };
        if gate.unitarity_error() > TOL {
            return Err(Error::NotUnitary { name: gate.name });
        }
        Ok(gate)
    }

    fn known(name: &str, arity: usize, matrix: Vec<ComplexAmp>) -> Self {
        Self {
            name: name.to_owned(),
            arity,
            matrix,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        1 << self.arity
    }

    pub fn matrix(&self) -> &[ComplexAmp] {
        &self.matrix
    }

    pub fn entry(&self, row: usize, col: usize) -> ComplexAmp {
        self.matrix[row * self.dim() + col]
    }

    /// `‖U†U − I‖∞` (largest entry magnitude).
    pub fn unitarity_error(&self) -> f64 {
        let d = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                let mut acc = c(0.0, 0.0);
                for k in 0..d {
                    acc += self.entry(k, i).conj() * self.entry(k, j);
                }
                if i == j {
                    acc -= 1.0;
                }
                worst = worst.max(acc.norm());
            }
        }
        worst
    }

    /// Matrix product `self · other`: applying `other` first, then `self`.
    pub fn compose(&self, other: &Gate) -> Result<Gate> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                name: other.name.clone(),
                arity: self.arity,
                given: other.arity,
            });
        }
        let d = self.dim();
        let matrix = (0..d * d)
            .map(|k| {
                let (i, j) = (k / d, k % d);
                (0..d).map(|m| self.entry(i, m) * other.entry(m, j)).sum()
            })
            .collect();
        Ok(Self::known(
            &format!("{}·{}", self.name, other.name),
            self.arity,
            matrix,
        ))
    }

    /// Conjugate transpose; the inverse of this gate.
    pub fn adjoint(&self) -> Gate {
        let d = self.dim();
        let matrix = (0..d * d)
            .map(|k| self.entry(k % d, k / d).conj())
            .collect();
        let name = match self.name.as_str() {
            "V" => "Vdag".to_owned(),
            "Vdag" => "V".to_owned(),
            "S" => "Sdag".to_owned(),
            "Sdag" => "S".to_owned(),
            "CV" => "CVdag".to_owned(),
            "CVdag" => "CV".to_owned(),
            n @ ("I" | "X" | "Y" | "Z" | "H" | "CNOT") => n.to_owned(),
            n => format!("{n}†"),
        };
        Self::known(&name, self.arity, matrix)
    }

    /// Two-qubit gate applying `self` to the target when the control is |1⟩.
    pub fn controlled(&self, name: &str) -> Result<Gate> {
        if self.arity != 1 {
            return Err(Error::ArityMismatch {
                name: self.name.clone(),
                arity: 1,
                given: self.arity,
            });
        }
        let mut m = vec![c(0.0, 0.0); 16];
        m[0] = c(1.0, 0.0);
        m[5] = c(1.0, 0.0);
        m[10] = self.matrix[0];
        m[11] = self.matrix[1];
        m[14] = self.matrix[2];
        m[15] = self.matrix[3];
        Ok(Self::known(name, 2, m))
    }

    pub fn max_abs_diff(&self, other: &Gate) -> f64 {
        if self.arity != other.arity {
            return f64::INFINITY;
        }
        self.matrix
            .iter()
            .zip(&other.matrix)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn identity() -> Gate {
        Self::known(
            "I",
            1,
            vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
        )
    }

    pub fn x() -> Gate {
        Self::known(
            "X",
            1,
            vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
        )
    }

    pub fn y() -> Gate {
        Self::known(
            "Y",
            1,
            vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)],
        )
    }

    pub fn z() -> Gate {
        Self::known(
            "Z",
            1,
            vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)],
        )
    }

    pub fn h() -> Gate {
        let h = FRAC_1_SQRT_2;
        Self::known("H", 1, vec![c(h, 0.0), c(h, 0.0), c(h, 0.0), c(-h, 0.0)])
    }

    pub fn s() -> Gate {
        Self::known(
            "S",
            1,
            vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 1.0)],
        )
    }

    pub fn s_dag() -> Gate {
        Self::s().adjoint()
    }

    /// Square root of NOT: `½[[1+i, 1−i], [1−i, 1+i]]`.
    pub fn v() -> Gate {
        let p = c(0.5, 0.5);
        let m = c(0.5, -0.5);
        Self::known("V", 1, vec![p, m, m, p])
    }

    pub fn v_dag() -> Gate {
        Self::v().adjoint()
    }

    pub fn cnot() -> Gate {
        Self::x().controlled("CNOT").expect("X is single-qubit")
    }

    pub fn cv() -> Gate {
        Self::v().controlled("CV").expect("V is single-qubit")
    }

    /// `exp(−iθX/2)`.
    pub fn rx(theta: f64) -> Gate {
        let (s, co) = (theta / 2.0).sin_cos();
        Self::known(
            "Rx",
            1,
            vec![c(co, 0.0), c(0.0, -s), c(0.0, -s), c(co, 0.0)],
        )
    }

    /// `exp(−iθY/2)`.
    pub fn ry(theta: f64) -> Gate {
        let (s, co) = (theta / 2.0).sin_cos();
        Self::known("Ry", 1, vec![c(co, 0.0), c(-s, 0.0), c(s, 0.0), c(co, 0.0)])
    }

    /// `exp(−iθZ/2)`.
    pub fn rz(theta: f64) -> Gate {
        let (s, co) = (theta / 2.0).sin_cos();
        Self::known("Rz", 1, vec![c(co, -s), c(0.0, 0.0), c(0.0, 0.0), c(co, s)])
    }
}

/// Looks up a fixed gate by name (see [`STANDARD_GATES`]).
pub fn standard_gate(name: &str) -> Result<Gate> {
    Ok(match name {
        "I" => Gate::identity(),
        "X" | "NOT" => Gate::x(),
        "Y" => Gate::y(),
        "Z" => Gate::z(),
        "H" => Gate::h(),
        "S" => Gate::s(),
        "Sdag" => Gate::s_dag(),
        "V" => Gate::v(),
        "Vdag" => Gate::v_dag(),
        "CNOT" => Gate::cnot(),
        "CV" => Gate::cv(),
        "CVdag" => Gate::cv().adjoint(),
        _ => return Err(Error::UnknownGate(name.to_owned())),
    })
}

/// Rotation gate `Rx`, `Ry` or `Rz` by `angle` radians.
pub fn rotation_gate(name: &str, angle: f64) -> Result<Gate> {
    if !angle.is_finite() {
        return Err(Error::NonFinite("rotation angle"));
    }
    match name {
        "Rx" => Ok(Gate::rx(angle)),
        "Ry" => Ok(Gate::ry(angle)),
        "Rz" => Ok(Gate::rz(angle)),
        _ => Err(Error::UnknownGate(name.to_owned())),
    }
}

/// Resolves either a standard or a rotation gate; rotations require `angle`.
pub fn resolve_gate(name: &str, angle: Option<f64>) -> Result<Gate> {
    if ROTATION_GATES.contains(&name) {
        let angle = angle.ok_or_else(|| Error::Parse(format!("gate {name} requires an angle")))?;
        rotation_gate(name, angle)
    } else {
        standard_gate(name)
    }
}
