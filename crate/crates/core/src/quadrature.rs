//! Gauss–Legendre rules and nested composite grids on symmetric boxes.

use std::f64::consts::PI;

/// Nodes and weights of the `order`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(order: usize) -> Vec<(f64, f64)> {
    assert!(order >= 1);
    let n = order;
    let mut rule = Vec::with_capacity(n);
    for i in 0..n {
        // Tricomi initial guess, then Newton on P_n.
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.push((x, w));
    }
    rule.sort_by(|a, b| a.0.total_cmp(&b.0));
    rule
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// A 1D node of a nested composite grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShellNode {
    pub x: f64,
    pub w: f64,
    /// Smallest radius index `k` with the node's panel inside `[-R_k, R_k]`.
    pub shell: usize,
}

/// Composite rule on `[-R_max, R_max]` whose panel edges include every `±R_k`,
/// so each panel belongs to exactly one shell `R_{k-1} < |y| ≤ R_k`.
pub fn shell_nodes(radii: &[f64], order: usize, panel_width: f64) -> Vec<ShellNode> {
    let rule = gauss_legendre(order);
    let mut edges = vec![0.0];
    let mut lo = 0.0;
    for &r in radii {
        let pieces = ((r - lo) / panel_width).ceil().max(1.0) as usize;
        let h = (r - lo) / pieces as f64;
        for p in 1..=pieces {
            edges.push(if p == pieces { r } else { lo + h * p as f64 });
        }
        lo = r;
    }
    let mut nodes = Vec::new();
    let mut shell = 0;
    for pair in edges.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        while b > radii[shell] {
            shell += 1;
        }
        let (mid, half) = ((a + b) / 2.0, (b - a) / 2.0);
        for &(x, w) in &rule {
            let node = mid + half * x;
            nodes.push(ShellNode { x: node, w: half * w, shell });
            nodes.push(ShellNode { x: -node, w: half * w, shell });
        }
    }
    nodes.sort_by(|a, b| a.x.total_cmp(&b.x));
    nodes
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_integrates_polynomials_exactly() {
        for order in [1, 2, 5, 10, 16] {
            let rule = gauss_legendre(order);
            let wsum: f64 = rule.iter().map(|r| r.1).sum();
            assert!((wsum - 2.0).abs() < 1e-13, "order {order}");
            for deg in 0..(2 * order) {
                let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
                let approx: f64 = rule.iter().map(|(x, w)| w * x.powi(deg as i32)).sum();
                assert!((approx - exact).abs() < 1e-13, "order {order} deg {deg}");
            }
        }
    }

    #[test]
    fn shells_partition_the_box() {
        let radii = [2.0, 4.0, 8.0];
        let nodes = shell_nodes(&radii, 4, 1.0);
        for k in 0..radii.len() {
            let len: f64 = nodes.iter().filter(|n| n.shell <= k).map(|n| n.w).sum();
            assert!((len - 2.0 * radii[k]).abs() < 1e-12);
            assert!(nodes.iter().filter(|n| n.shell == k).all(|n| n.x.abs() <= radii[k]));
        }
    }

    #[test]
    fn gaussian_integral() {
        let nodes = shell_nodes(&[8.0], 10, 1.0);
        let v: f64 = nodes.iter().map(|n| n.w * (-n.x * n.x).exp()).sum();
        assert!((v - PI.sqrt()).abs() < 1e-12);
    }
}
