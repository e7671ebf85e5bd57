//! Named equations from the classification.

use crate::error::{Error, Result};
use crate::expr::parse_equation;
use crate::grassmann::MAEquation;

#[derive(Clone, Copy, Debug)]
pub struct Builtin {
    pub name: &'static str,
    pub n: usize,
    pub expr: &'static str,
    pub description: &'static str,
}

pub const BUILTINS: &[Builtin] = &[
    Builtin {
        name: "linear-wave",
        n: 4,
        expr: "u11 - u22 - u33 - u44",
        description: "linear wave equation",
    },
    Builtin {
        name: "second-heavenly",
        n: 4,
        expr: "u13 + u24 + u11*u22 - u12^2",
        description: "second heavenly equation",
    },
    Builtin {
        name: "modified-heavenly",
        n: 4,
        expr: "u13 - u12*u44 + u14*u24",
        description: "modified heavenly equation",
    },
    Builtin {
        name: "first-heavenly",
        n: 4,
        expr: "u13*u24 - u14*u23 - 1",
        description: "first heavenly equation",
    },
    Builtin {
        name: "husain",
        n: 4,
        expr: "u11 + u22 + u13*u24 - u14*u23",
        description: "Husain equation",
    },
    Builtin {
        name: "general-heavenly",
        n: 4,
        expr: "u12*u34 + 2*u13*u24 - 3*u14*u23",
        description: "general heavenly equation (alpha, beta, gamma = 1, 2, -3)",
    },
    Builtin {
        name: "hess4",
        n: 4,
        expr: "HESS - 1",
        description: "Hess u = 1 in four dimensions",
    },
    Builtin {
        name: "laplace4",
        n: 4,
        expr: "u11 + u22 + u33 + u44",
        description: "four-dimensional Laplace equation",
    },
    Builtin {
        name: "hess3",
        n: 3,
        expr: "HESS - 1",
        description: "Hess u = 1 (improper affine spheres)",
    },
    Builtin {
        name: "slag3",
        n: 3,
        expr: "HESS - u11 - u22 - u33",
        description: "Hess u = u11 + u22 + u33 (special Lagrangian)",
    },
    Builtin {
        name: "hess3-mixed",
        n: 3,
        expr: "HESS - u11 - u22 + u33",
        description: "Hess u = u11 + u22 - u33",
    },
    Builtin {
        name: "laplace3",
        n: 3,
        expr: "u11 + u22 + u33",
        description: "three-dimensional Laplace equation",
    },
    Builtin {
        name: "kahler",
        n: 3,
        expr: "u33*(1 + u11 + u22) - u13^2 - u23^2 - 1",
        description: "Kahler potential equation with epsilon = 1",
    },
    Builtin {
        name: "ma2",
        n: 2,
        expr: "HESS - 1",
        description: "two-dimensional Monge-Ampere equation",
    },
];

pub fn builtin(name: &str) -> Result<MAEquation> {
    let b = BUILTINS
        .iter()
        .find(|b| b.name == name)
        .ok_or_else(|| Error::Unsupported(format!("unknown builtin {name:?}")))?;
    parse_equation(b.n, b.expr)
}
