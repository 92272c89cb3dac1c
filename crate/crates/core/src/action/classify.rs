use std::collections::HashSet;

use super::Automorphism;
use crate::complex::{Cube, CubeComplex, Vertex, DEFAULT_BALL_CAP};
use crate::hyperplane::{crosses, hyperplanes_between, representative, separates, side, Hyperplane, Sign};

/// Search limits for certificates and orbit exploration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Largest power `k` tried in the skewering search.
    pub power: u32,
    /// Largest ball radius scanned for an invariant cube.
    pub radius: usize,
    /// Largest number of orbit vertices explored.
    pub orbit_cap: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            power: 8,
            radius: 12,
            orbit_cap: 20_000,
        }
    }
}

/// A finite, checkable witness of the dynamical type of an automorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// The automorphism maps this cube onto itself, so it fixes the
    /// barycenter.
    Elliptic { cube: Cube },
    /// `triple = (g^-k H, H, g^k H)` is pairwise non-crossing and `H`
    /// separates the outer two; `sides` are the sides of `H` holding them.
    /// `g^k` skewers `H`, so every orbit is unbounded.
    Hyperbolic {
        hyperplane: Hyperplane,
        power: u32,
        triple: [Hyperplane; 3],
        sides: [Sign; 2],
    },
}

impl Certificate {
    pub fn is_hyperbolic(&self) -> bool {
        matches!(self, Certificate::Hyperbolic { .. })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Elliptic { .. } => "elliptic",
            Certificate::Hyperbolic { .. } => "hyperbolic",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    Certified(Certificate),
    Undecided { power: u32, radius: usize },
}

impl Classification {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Classification::Certified(c) => Some(c),
            Classification::Undecided { .. } => None,
        }
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.certificate().is_some_and(Certificate::is_hyperbolic)
    }

    pub fn is_elliptic(&self) -> bool {
        matches!(self, Classification::Certified(Certificate::Elliptic { .. }))
    }
}

fn skewering_triple(
    x: &CubeComplex,
    forward: &Automorphism,
    backward: &Automorphism,
    h: &Hyperplane,
) -> Option<([Hyperplane; 3], [Sign; 2])> {
    let before = backward.apply_hyperplane(x, h);
    let after = forward.apply_hyperplane(x, h);
    if before == *h || after == *h || before == after {
        return None;
    }
    if crosses(x, &before, h) || crosses(x, h, &after) || crosses(x, &before, &after) {
        return None;
    }
    if !separates(x, h, &before, &after).ok()? {
        return None;
    }
    let sides = [
        side(x, h, &representative(x, &before).tail),
        side(x, h, &representative(x, &after).tail),
    ];
    Some(([before, h.clone(), after], sides))
}

/// Looks for `H` between `v` and `g(v)` and `k <= max_power` such that
/// `g^k` skewers `H`.
pub fn hyperbolic_certificate(
    x: &CubeComplex,
    g: &Automorphism,
    v: &Vertex,
    max_power: u32,
) -> Option<Certificate> {
    let candidates = hyperplanes_between(x, v, &g.apply(v));
    if candidates.is_empty() {
        return None;
    }
    let inverse = g.inverse();
    let mut forward = Automorphism::identity(x);
    let mut backward = Automorphism::identity(x);
    for power in 1..=max_power {
        forward = g.compose(&forward).ok()?;
        backward = inverse.compose(&backward).ok()?;
        for h in &candidates {
            if let Some((triple, sides)) = skewering_triple(x, &forward, &backward, h) {
                return Some(Certificate::Hyperbolic {
                    hyperplane: h.clone(),
                    power,
                    triple,
                    sides,
                });
            }
        }
    }
    None
}

/// First cube `C` with `g(C) = C` among the cubes meeting the ball of
/// radius `radius` around `v`, scanned layer by layer.
pub fn elliptic_certificate(x: &CubeComplex, g: &Automorphism, v: &Vertex, radius: usize) -> Option<Certificate> {
    let layers = x.ball_layers(v, radius, DEFAULT_BALL_CAP).ok()?;
    let mut tested: HashSet<Cube> = HashSet::new();
    for layer in &layers {
        for u in layer {
            for cube in x.cubes_containing(u) {
                if tested.contains(&cube) {
                    continue;
                }
                if g.apply_cube(&cube) == cube {
                    return Some(Certificate::Elliptic { cube });
                }
                tested.insert(cube);
            }
        }
    }
    None
}

/// Budgeted classification: a skewering certificate, else an invariant
/// cube, else `Undecided`.
pub fn classify(x: &CubeComplex, g: &Automorphism, v: &Vertex, budget: &Budget) -> Classification {
    if let Some(c) = hyperbolic_certificate(x, g, v, budget.power) {
        return Classification::Certified(c);
    }
    match elliptic_certificate(x, g, v, budget.radius) {
        Some(c) => Classification::Certified(c),
        None => Classification::Undecided {
            power: budget.power,
            radius: budget.radius,
        },
    }
}

/// Re-checks a certificate against `g` from scratch.
pub fn verify_certificate(x: &CubeComplex, g: &Automorphism, certificate: &Certificate) -> bool {
    match certificate {
        Certificate::Elliptic { cube } => g.apply_cube(cube) == *cube,
        Certificate::Hyperbolic { hyperplane, power, triple, sides } => {
            let forward = g.power(x, *power);
            let backward = g.inverse().power(x, *power);
            skewering_triple(x, &forward, &backward, hyperplane)
                .is_some_and(|(t, s)| t == *triple && s == *sides)
        }
    }
}

/// `d(v, g^n v) / n`, an estimate of the stable translation length.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TranslationEstimate {
    pub distance: usize,
    pub n: usize,
}

impl TranslationEstimate {
    pub fn value(&self) -> f64 {
        self.distance as f64 / self.n as f64
    }

    /// The ratio in lowest terms.
    pub fn reduced(&self) -> (usize, usize) {
        let (mut a, mut b) = (self.distance, self.n);
        while b != 0 {
            (a, b) = (b, a % b);
        }
        (self.distance / a.max(1), self.n / a.max(1))
    }
}

pub fn translation_length_estimate(x: &CubeComplex, g: &Automorphism, v: &Vertex, n: usize) -> TranslationEstimate {
    assert!(n >= 1, "translation length estimate needs n >= 1");
    let mut w = v.clone();
    for _ in 0..n {
        w = g.apply(&w);
    }
    TranslationEstimate {
        distance: x.distance(v, &w),
        n,
    }
}
