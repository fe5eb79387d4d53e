//! Construction of the 2n coordinate probes of one iteration and the choice
//! of the move among them.

use crate::domain::UnitPoint;
use crate::pool::CoordinateMove;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Plus,
    Minus,
}

/// One candidate point: the incumbent with coordinate `index` moved by
/// `local_step` in `direction`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Probe {
    pub index: usize,
    pub direction: Direction,
    /// Zero when the probe is skipped because no admissible step exists.
    pub local_step: f64,
    /// New value of coordinate `index`.
    pub coord: f64,
    /// Objective value at the probe, or the incumbent value when skipped or
    /// not yet evaluated.
    pub value: f64,
}

impl Probe {
    pub fn is_active(&self) -> bool {
        self.local_step > 0.0
    }

    pub fn point(&self, base: &UnitPoint) -> UnitPoint {
        let mut coords = base.coords().to_vec();
        coords[self.index] = self.coord;
        UnitPoint::from_vec_unchecked(coords)
    }

    pub(crate) fn as_move(&self) -> CoordinateMove {
        CoordinateMove {
            index: self.index,
            value: self.coord,
        }
    }
}

/// Exponent `f` of the shrunk step `s / rho^f` for a probe whose raw step
/// `s` would overshoot a boundary at distance `gap`.
///
/// `f` is the smallest integer with `s / rho^f < gap`, i.e.
/// `floor(log_rho(s / gap)) + 1`. Returns `None` when `gap <= phi` or when
/// the shrunk step would not stay strictly above `phi`.
pub fn shrink_exponent(gap: f64, s: f64, rho: f64, phi: f64) -> Option<i32> {
    shrink_step(gap, s, rho, phi).map(|(f, _)| f)
}

pub(crate) fn shrink_step(gap: f64, s: f64, rho: f64, phi: f64) -> Option<(i32, f64)> {
    if gap.is_nan() || gap <= phi {
        return None;
    }
    let step_for = |f: i32| s / rho.powi(f);
    let estimate = ((s / gap).ln() / rho.ln()).floor();
    if !estimate.is_finite() {
        return None;
    }
    let mut f = estimate as i32 + 1;
    // The logarithm can be off by one ulp near exact powers of rho.
    while step_for(f) >= gap {
        f += 1;
    }
    while step_for(f - 1) < gap {
        f -= 1;
    }
    let step = step_for(f);
    (step > phi).then_some((f, step))
}

/// Builds the probes for incumbent `x` with value `y` and global step
/// `s_global`, plus directions first, each direction in coordinate order.
/// Values are left at `y`; evaluation is a separate pass.
pub fn build_probes(x: &[f64], y: f64, s_global: f64, rho: f64, phi: f64) -> Vec<Probe> {
    let n = x.len();
    let mut probes = Vec::with_capacity(2 * n);
    let skipped = |index, direction| Probe {
        index,
        direction,
        local_step: 0.0,
        coord: x[index],
        value: y,
    };
    for (index, &xi) in x.iter().enumerate() {
        let q = xi + s_global;
        let probe = if q < 1.0 {
            Probe {
                index,
                direction: Direction::Plus,
                local_step: s_global,
                coord: q,
                value: y,
            }
        } else if q > 1.0 && 1.0 - xi > phi {
            match shrink_step(1.0 - xi, s_global, rho, phi) {
                Some((_, step)) => Probe {
                    index,
                    direction: Direction::Plus,
                    local_step: step,
                    coord: (xi + step).min(1.0),
                    value: y,
                },
                None => skipped(index, Direction::Plus),
            }
        } else {
            skipped(index, Direction::Plus)
        };
        probes.push(probe);
    }
    for (index, &xi) in x.iter().enumerate() {
        let q = xi - s_global;
        let probe = if q > 0.0 {
            Probe {
                index,
                direction: Direction::Minus,
                local_step: s_global,
                coord: q,
                value: y,
            }
        } else if q < 0.0 && xi > phi {
            match shrink_step(xi, s_global, rho, phi) {
                Some((_, step)) => Probe {
                    index,
                    direction: Direction::Minus,
                    local_step: step,
                    coord: (xi - step).max(0.0),
                    value: y,
                },
                None => skipped(index, Direction::Minus),
            }
        } else {
            skipped(index, Direction::Minus)
        };
        probes.push(probe);
    }
    probes
}

/// Picks the move of an iteration from evaluated probes.
///
/// Within each direction the lowest value wins, ties going to the lowest
/// coordinate. Across directions the plus probe wins only if strictly
/// better than the best minus probe. Returns `None` unless the winner is
/// strictly below the incumbent value `y`.
pub fn select_move(probes: &[Probe], y: f64) -> Option<&Probe> {
    let best = |dir: Direction| {
        probes
            .iter()
            .filter(|p| p.direction == dir)
            .fold(None::<&Probe>, |acc, p| match acc {
                Some(b) if b.value <= p.value => Some(b),
                _ => Some(p),
            })
    };
    let plus = best(Direction::Plus);
    let minus = best(Direction::Minus);
    let winner = match (plus, minus) {
        (Some(p), Some(m)) => {
            if p.value < m.value {
                p
            } else {
                m
            }
        }
        (Some(p), None) => p,
        (None, Some(m)) => m,
        (None, None) => return None,
    };
    (winner.value < y).then_some(winner)
}
