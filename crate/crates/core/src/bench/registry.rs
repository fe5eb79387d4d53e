use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::functions as f;
use super::BenchError;
use crate::domain::Bounds;
use crate::objective::BoxObjective;

/// Which family of search domains to use for a function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// Low-dimensional domains of the classic test-function tables.
    #[default]
    Standard,
    /// Symmetric high-dimensional domains; minimum in the interior.
    Highdim,
    /// Domains shifted so that the minimum lies on or next to the boundary.
    Boundary,
}

impl Suite {
    pub const ALL: [Suite; 3] = [Suite::Standard, Suite::Highdim, Suite::Boundary];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Standard => "standard",
            Suite::Highdim => "highdim",
            Suite::Boundary => "boundary",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "standard" => Ok(Suite::Standard),
            "highdim" => Ok(Suite::Highdim),
            "boundary" => Ok(Suite::Boundary),
            other => Err(BenchError::UnknownSuite(other.to_owned())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    Cube(f64, f64),
    Rect(&'static [(f64, f64)]),
}

impl Domain {
    pub fn bounds(self, dim: usize) -> Bounds {
        let bounds = match self {
            Domain::Cube(a, b) => Bounds::cube(a, b, dim),
            Domain::Rect(r) => Bounds::new(
                r.iter().map(|p| p.0).collect(),
                r.iter().map(|p| p.1).collect(),
            ),
        };
        bounds.expect("registry domains are valid")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Fixed(usize),
    Scalable,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Argmin {
    /// The same value in every coordinate.
    Repeated(f64),
    Point(&'static [f64]),
}

impl Argmin {
    fn point(self, dim: usize) -> Vec<f64> {
        match self {
            Argmin::Repeated(v) => vec![v; dim],
            Argmin::Point(p) => p.to_vec(),
        }
    }
}

/// A registered test function.
#[derive(Clone, Copy)]
pub struct Benchmark {
    pub name: &'static str,
    pub dimension: Dimension,
    pub func: fn(&[f64]) -> f64,
    pub standard: Domain,
    /// Domains for the high-dimensional suites, where defined.
    pub highdim: Option<Domain>,
    pub boundary: Option<Domain>,
    pub argmin: Option<Argmin>,
    pub convex: bool,
}

impl fmt::Debug for Benchmark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Benchmark")
            .field("name", &self.name)
            .field("dimension", &self.dimension)
            .finish_non_exhaustive()
    }
}

impl Benchmark {
    pub fn domain(&self, suite: Suite) -> Option<Domain> {
        match suite {
            Suite::Standard => Some(self.standard),
            Suite::Highdim => self.highdim,
            Suite::Boundary => self.boundary,
        }
    }

    /// Dimension used when the caller does not request one.
    pub fn default_dim(&self) -> usize {
        match self.dimension {
            Dimension::Fixed(d) => d,
            Dimension::Scalable => 2,
        }
    }

    pub fn supports_dim(&self, d: usize) -> bool {
        match self.dimension {
            Dimension::Fixed(k) => k == d,
            Dimension::Scalable => d >= 1,
        }
    }
}

/// A benchmark instantiated at a dimension and suite.
#[derive(Debug, Clone)]
pub struct BenchmarkSpec {
    pub name: &'static str,
    pub dimension: usize,
    pub scalable: bool,
    pub suite: Suite,
    pub bounds: Bounds,
    pub known_min: Option<f64>,
    pub known_argmin: Option<Vec<f64>>,
    pub convex: bool,
    func: fn(&[f64]) -> f64,
}

impl BenchmarkSpec {
    pub fn eval(&self, z: &[f64]) -> f64 {
        (self.func)(z)
    }

    pub fn func(&self) -> fn(&[f64]) -> f64 {
        self.func
    }

    /// The function as an optimizer objective on its box.
    pub fn objective(&self) -> BoxObjective<fn(&[f64]) -> f64> {
        BoxObjective::new(self.bounds.clone(), self.func)
    }
}

// Minimizers where the record value is rounded in the literature were
// refined numerically to full double precision.
const SCHWEFEL_ARGMIN: f64 = 420.968_746_038_928_66;
const STYBLINSKI_TANG_ARGMIN: f64 = -2.903_534_024_006_128_3;

static REGISTRY: &[Benchmark] = &[
    Benchmark {
        name: "ackley",
        dimension: Dimension::Scalable,
        func: f::ackley,
        standard: Domain::Cube(-32.768, 32.768),
        highdim: Some(Domain::Cube(-5.0, 5.0)),
        boundary: Some(Domain::Cube(0.0, 5.0)),
        argmin: Some(Argmin::Repeated(0.0)),
        convex: false,
    },
    Benchmark {
        name: "griewank",
        dimension: Dimension::Scalable,
        func: f::griewank,
        standard: Domain::Cube(-600.0, 600.0),
        highdim: Some(Domain::Cube(-10.0, 10.0)),
        boundary: Some(Domain::Cube(0.0, 10.0)),
        argmin: Some(Argmin::Repeated(0.0)),
        convex: false,
    },
    Benchmark {
        name: "rastrigin",
        dimension: Dimension::Scalable,
        func: f::rastrigin,
        standard: Domain::Cube(-5.12, 5.12),
        highdim: Some(Domain::Cube(-5.12, 5.12)),
        boundary: Some(Domain::Cube(0.0, 5.12)),
        argmin: Some(Argmin::Repeated(0.0)),
        convex: false,
    },
    Benchmark {
        name: "schwefel",
        dimension: Dimension::Scalable,
        func: f::schwefel,
        standard: Domain::Cube(-500.0, 500.0),
        highdim: Some(Domain::Cube(-500.0, 500.0)),
        boundary: Some(Domain::Cube(0.0, 420.97)),
        argmin: Some(Argmin::Repeated(SCHWEFEL_ARGMIN)),
        convex: false,
    },
    Benchmark {
        name: "sphere",
        dimension: Dimension::Scalable,
        func: f::sphere,
        standard: Domain::Cube(-5.12, 5.12),
        highdim: Some(Domain::Cube(-5.12, 5.12)),
        boundary: Some(Domain::Cube(0.0, 5.12)),
        argmin: Some(Argmin::Repeated(0.0)),
        convex: true,
    },
    Benchmark {
        name: "sum_squares",
        dimension: Dimension::Scalable,
        func: f::sum_squares,
        standard: Domain::Cube(-5.12, 5.12),
        highdim: Some(Domain::Cube(-5.12, 5.12)),
        boundary: Some(Domain::Cube(0.0, 5.12)),
        argmin: Some(Argmin::Repeated(0.0)),
        convex: true,
    },
    Benchmark {
        name: "levy",
        dimension: Dimension::Scalable,
        func: f::levy,
        standard: Domain::Cube(-10.0, 10.0),
        highdim: None,
        boundary: None,
        argmin: Some(Argmin::Repeated(1.0)),
        convex: false,
    },
    Benchmark {
        name: "styblinski_tang",
        dimension: Dimension::Scalable,
        func: f::styblinski_tang,
        standard: Domain::Cube(-5.0, 5.0),
        highdim: None,
        boundary: None,
        argmin: Some(Argmin::Repeated(STYBLINSKI_TANG_ARGMIN)),
        convex: false,
    },
    Benchmark {
        name: "rosenbrock",
        dimension: Dimension::Scalable,
        func: f::rosenbrock,
        standard: Domain::Cube(-5.0, 10.0),
        highdim: None,
        boundary: None,
        argmin: Some(Argmin::Repeated(1.0)),
        convex: false,
    },
    Benchmark {
        name: "zakharov",
        dimension: Dimension::Scalable,
        func: f::zakharov,
        standard: Domain::Cube(-5.0, 10.0),
        highdim: None,
        boundary: None,
        argmin: Some(Argmin::Repeated(0.0)),
        convex: true,
    },
    Benchmark {
        name: "rotated_hyper_ellipsoid",
        dimension: Dimension::Scalable,
        func: f::rotated_hyper_ellipsoid,
        standard: Domain::Cube(-65.536, 65.536),
        highdim: None,
        boundary: None,
        argmin: Some(Argmin::Repeated(0.0)),
        convex: true,
    },
    Benchmark {
        name: "drop_wave",
        dimension: Dimension::Fixed(2),
        func: f::drop_wave,
        standard: Domain::Cube(-5.12, 5.12),
        highdim: None,
        boundary: None,
        argmin: Some(Argmin::Repeated(0.0)),
        convex: false,
    },
    Benchmark {
        name: "eggholder",
        dimension: Dimension::Fixed(2),
        func: f::eggholder,
        standard: Domain::Cube(-512.0, 512.0),
        highdim: None,
        boundary: None,
        argmin: Some(Argmin::Point(&[512.0, 404.231_804_828_897_96])),
        convex: false,
    },
    Benchmark {
        name: "holder_table",
        dimension: Dimension::Fixed(2),
        func: f::holder_table,
        standard: Domain::Cube(-10.0, 10.0),
        highdim: None,
        boundary: None,
        argmin: Some(Argmin::Point(&[8.055_023_466_339_607, 9.664_590_027_738_118])),
        convex: false,
    },
    Benchmark {
        name: "cross_in_tray",
        dimension: Dimension::Fixed(2),
        func: f::cross_in_tray,
        standard: Domain::Cube(-10.0, 10.0),
        highdim: None,
        boundary: None,
        argmin: Some(Argmin::Repeated(1.349_406_619_430_78)),
        convex: false,
    },
    Benchmark {
        name: "shubert",
        dimension: Dimension::Fixed(2),
        func: f::shubert,
        standard: Domain::Cube(-5.12, 5.12),
        highdim: None,
        boundary: None,
        argmin: Some(Argmin::Point(&[-1.425_128_431_262_544_7, -0.800_321_098_787_487_1])),
        convex: false,
    },
    Benchmark {
        name: "six_hump_camel",
        dimension: Dimension::Fixed(2),
        func: f::six_hump_camel,
        standard: Domain::Rect(&[(-3.0, 3.0), (-2.0, 2.0)]),
        highdim: None,
        boundary: None,
        argmin: Some(Argmin::Point(&[0.089_842_008_935_272_33, -0.712_656_403_019_058])),
        convex: false,
    },
    Benchmark {
        name: "three_hump_camel",
        dimension: Dimension::Fixed(2),
        func: f::three_hump_camel,
        standard: Domain::Cube(-5.0, 5.0),
        highdim: None,
        boundary: None,
        argmin: Some(Argmin::Repeated(0.0)),
        convex: false,
    },
    Benchmark {
        name: "matyas",
        dimension: Dimension::Fixed(2),
        func: f::matyas,
        standard: Domain::Cube(-10.0, 10.0),
        highdim: None,
        boundary: None,
        argmin: Some(Argmin::Repeated(0.0)),
        convex: true,
    },
    Benchmark {
        name: "bohachevsky1",
        dimension: Dimension::Fixed(2),
        func: f::bohachevsky1,
        standard: Domain::Cube(-100.0, 100.0),
        highdim: None,
        boundary: None,
        argmin: Some(Argmin::Repeated(0.0)),
        convex: false,
    },
    Benchmark {
        name: "easom",
        dimension: Dimension::Fixed(2),
        func: f::easom,
        standard: Domain::Cube(-100.0, 100.0),
        highdim: None,
        boundary: None,
        argmin: Some(Argmin::Repeated(std::f64::consts::PI)),
        convex: false,
    },
    Benchmark {
        name: "branin",
        dimension: Dimension::Fixed(2),
        func: f::branin,
        standard: Domain::Rect(&[(-5.0, 10.0), (0.0, 15.0)]),
        highdim: None,
        boundary: None,
        argmin: Some(Argmin::Point(&[std::f64::consts::PI, 2.275])),
        convex: false,
    },
    Benchmark {
        name: "goldstein_price",
        dimension: Dimension::Fixed(2),
        func: f::goldstein_price,
        standard: Domain::Cube(-2.0, 2.0),
        highdim: None,
        boundary: None,
        argmin: Some(Argmin::Point(&[0.0, -1.0])),
        convex: false,
    },
    Benchmark {
        name: "schaffer_n2",
        dimension: Dimension::Fixed(2),
        func: f::schaffer_n2,
        standard: Domain::Cube(-100.0, 100.0),
        highdim: None,
        boundary: None,
        argmin: Some(Argmin::Repeated(0.0)),
        convex: false,
    },
    Benchmark {
        name: "levy_n13",
        dimension: Dimension::Fixed(2),
        func: f::levy_n13,
        standard: Domain::Cube(-10.0, 10.0),
        highdim: None,
        boundary: None,
        argmin: Some(Argmin::Repeated(1.0)),
        convex: false,
    },
];

/// Every registered benchmark, in a fixed order.
pub fn registry() -> &'static [Benchmark] {
    REGISTRY
}

pub fn find(name: &str) -> Result<&'static Benchmark, BenchError> {
    REGISTRY
        .iter()
        .find(|b| b.name == name)
        .ok_or_else(|| BenchError::UnknownFunction(name.to_owned()))
}

/// Instantiates `name` at dimension `d` on the domain of `suite`.
///
/// The known minimum is the function value at the registered minimizer.
pub fn lookup(name: &str, d: usize, suite: Suite) -> Result<BenchmarkSpec, BenchError> {
    let b = find(name)?;
    if !b.supports_dim(d) {
        return Err(BenchError::UnsupportedDimension {
            name: b.name,
            requested: d,
        });
    }
    let domain = b.domain(suite).ok_or(BenchError::UnsupportedSuite {
        name: b.name,
        suite,
    })?;
    let bounds = domain.bounds(d);
    let known_argmin = b.argmin.map(|a| a.point(d));
    let known_min = known_argmin.as_deref().map(b.func);
    Ok(BenchmarkSpec {
        name: b.name,
        dimension: d,
        scalable: b.dimension == Dimension::Scalable,
        suite,
        bounds,
        known_min,
        known_argmin,
        convex: b.convex,
        func: b.func,
    })
}

/// Evaluates `name` at `z`, which must lie in the function's standard
/// domain (the widest of its suites).
pub fn evaluate_benchmark(name: &str, z: &[f64]) -> Result<f64, BenchError> {
    let b = find(name)?;
    if !b.supports_dim(z.len()) {
        return Err(BenchError::UnsupportedDimension {
            name: b.name,
            requested: z.len(),
        });
    }
    let bounds = b.standard.bounds(z.len());
    if let Err(e) = bounds.to_unit(z) {
        return Err(BenchError::Domain(e));
    }
    Ok((b.func)(z))
}
