use alloc::vec::Vec;

use super::{LayoutConfig, SplitMix64, Vec2};

/// Separations below this are treated as this for force magnitudes.
pub const MIN_DISTANCE: f64 = 1e-9;

/// Slack below which an overlap is considered resolved. Kept well under the
/// 1e-6 tolerance promised by [`resolve_overlaps`] so floating-point residue
/// from an exact push does not trigger another sweep.
const OVERLAP_SLACK: f64 = 1e-9;

/// Place `count` nodes uniformly on the canvas, two draws per node.
///
/// A single node skips the generator and sits at the canvas center.
pub fn place_randomly(count: usize, config: &LayoutConfig, rng: &mut SplitMix64) -> Vec<Vec2> {
    if count == 1 {
        return alloc::vec![Vec2::new(config.canvas_width / 2.0, config.canvas_height / 2.0)];
    }
    (0..count)
        .map(|_| {
            let x = rng.next_f64() * config.canvas_width;
            let y = rng.next_f64() * config.canvas_height;
            Vec2::new(x, y)
        })
        .collect()
}

/// Unit vector pointing from `from` to `to`, with `(1, 0)` standing in when
/// the points coincide, plus the floored distance between them.
fn direction(from: Vec2, to: Vec2) -> (Vec2, f64) {
    let delta = to - from;
    let d = delta.length();
    if d == 0.0 {
        (Vec2::X, MIN_DISTANCE)
    } else {
        (delta * (1.0 / d), d.max(MIN_DISTANCE))
    }
}

/// One Fruchterman–Reingold iteration.
///
/// Every ordered pair of nodes repels with magnitude `k²/d`; every edge pulls
/// its endpoints together with magnitude `d²/k`. Displacements are summed
/// for all nodes before any node moves, and each node's total move is capped
/// at `temperature`.
pub fn force_step(positions: &[Vec2], edges: &[(usize, usize)], k: f64, temperature: f64) -> Vec<Vec2> {
    let n = positions.len();
    let k2 = k * k;
    let mut disp = alloc::vec![Vec2::ZERO; n];

    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            // For coincident nodes the lower index is treated as sitting on
            // the -x side, so the pair splits along (1, 0).
            let (u, d) = if i < j {
                direction(positions[i], positions[j])
            } else {
                let (u, d) = direction(positions[j], positions[i]);
                (-u, d)
            };
            disp[i] -= u * (k2 / d);
        }
    }

    for &(a, b) in edges {
        if a == b {
            continue;
        }
        let delta = positions[b] - positions[a];
        let d = delta.length();
        if d == 0.0 {
            continue;
        }
        // (delta / d) * (d² / k)
        let pull = delta * (d / k);
        disp[a] += pull;
        disp[b] -= pull;
    }

    positions
        .iter()
        .zip(disp)
        .map(|(&p, v)| {
            let len = v.length();
            if len > temperature {
                if temperature > 0.0 {
                    p + v * (temperature / len)
                } else {
                    p
                }
            } else {
                p + v
            }
        })
        .collect()
}

/// Push overlapping circles apart.
///
/// Pairs are visited in index order and a pair closer than
/// `r_i + r_j + padding` is split by moving each center half the deficit
/// along the line joining them. Sweeps repeat until one makes no push, up to
/// `max_passes`. Returns the positions and whether a clean sweep was reached.
pub fn resolve_overlaps(positions: &[Vec2], radii: &[f64], padding: f64, max_passes: usize) -> (Vec<Vec2>, bool) {
    let mut p = positions.to_vec();
    let n = p.len();
    for _ in 0..max_passes {
        let mut pushed = false;
        for i in 0..n {
            for j in i + 1..n {
                let wanted = radii[i] + radii[j] + padding;
                let delta = p[j] - p[i];
                let d = delta.length();
                if d >= wanted - OVERLAP_SLACK {
                    continue;
                }
                let u = if d == 0.0 { Vec2::X } else { delta * (1.0 / d) };
                let half = (wanted - d) / 2.0;
                p[i] -= u * half;
                p[j] += u * half;
                pushed = true;
            }
        }
        if !pushed {
            return (p, true);
        }
    }
    let converged = all_separated(&p, radii, padding, OVERLAP_SLACK);
    (p, converged)
}

/// `true` if every pair satisfies `|p_i - p_j| >= r_i + r_j + padding - tolerance`.
pub fn all_separated(positions: &[Vec2], radii: &[f64], padding: f64, tolerance: f64) -> bool {
    (0..positions.len()).all(|i| {
        (i + 1..positions.len())
            .all(|j| positions[i].distance(positions[j]) >= radii[i] + radii[j] + padding - tolerance)
    })
}
