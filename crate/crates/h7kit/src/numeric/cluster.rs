use super::{hdot, norm, proj_dist, NumericError, C64};

pub const CLUSTER_TOL: f64 = 1e-5;
pub const AMBIGUITY_BAND: f64 = 1e-3;

#[derive(Clone, Debug)]
pub struct Cluster {
    pub point: Vec<C64>,
    pub mult: usize,
    /// Largest distance between two merged members.
    pub spread: f64,
    /// Distance to the nearest other cluster over the merge threshold.
    pub separation: f64,
}

/// Single-linkage clustering of weighted projective points.
///
/// Distances are Fubini–Study sines scaled by the configuration diameter.
/// A pair at scaled distance in [tol, band) makes the split ambiguous.
/// The scale is floored at `band` so a single fat point stays one cluster.
pub fn cluster(points: &[(Vec<C64>, usize)], tol: f64, band: f64) -> Result<Vec<Cluster>, NumericError> {
    let n = points.len();
    let mut d = vec![vec![0.0; n]; n];
    let mut diam: f64 = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            let x = proj_dist(&points[i].0, &points[j].0);
            d[i][j] = x;
            d[j][i] = x;
            diam = diam.max(x);
        }
    }
    let scale = diam.max(band);
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut Vec<usize>, mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if d[i][j] / scale < tol {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let labels: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            let x = d[i][j] / scale;
            if labels[i] != labels[j] && x < band {
                return Err(NumericError::AmbiguousClustering { gap: x, tol, band });
            }
        }
    }
    let mut reps: Vec<usize> = labels.clone();
    reps.sort();
    reps.dedup();
    let out = reps
        .iter()
        .map(|&r| {
            let members: Vec<usize> = (0..n).filter(|&i| labels[i] == r).collect();
            let base = &points[members[0]].0;
            let mut acc = vec![C64::new(0.0, 0.0); base.len()];
            let mut mult = 0;
            for &i in &members {
                let p = &points[i].0;
                // align phases before averaging
                let ph = hdot(p, base);
                let ph = if ph.norm() > 0.0 { ph / ph.norm() } else { C64::new(1.0, 0.0) };
                let w = points[i].1 as f64 / norm(p);
                for (a, x) in acc.iter_mut().zip(p) {
                    *a += x * ph * w;
                }
                mult += points[i].1;
            }
            let spread = members
                .iter()
                .flat_map(|&i| members.iter().map(move |&j| (i, j)))
                .map(|(i, j)| d[i][j])
                .fold(0.0, f64::max);
            let separation = (0..n)
                .filter(|&j| labels[j] != r)
                .flat_map(|j| members.iter().map(move |&i| (i, j)))
                .map(|(i, j)| d[i][j])
                .fold(f64::INFINITY, f64::min);
            let nn = norm(&acc);
            Cluster { point: acc.iter().map(|z| z / nn).collect(), mult, spread, separation }
        })
        .collect();
    Ok(out)
}

/// Partition from multiplicities, sorted descending.
pub fn partition(mults: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let mut v: Vec<usize> = mults.into_iter().collect();
    v.sort_by(|a, b| b.cmp(a));
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> Vec<C64> {
        vec![C64::new(x, 0.0), C64::new(y, 0.0), C64::new(1.0, 0.0)]
    }

    #[test]
    fn separated_points() {
        let pts: Vec<_> = (0..6).map(|i| (p(i as f64, (i * i) as f64 * 0.1), 1)).collect();
        let cl = cluster(&pts, CLUSTER_TOL, AMBIGUITY_BAND).unwrap();
        assert_eq!(partition(cl.iter().map(|c| c.mult)), vec![1; 6]);
    }

    #[test]
    fn coincident_pairs() {
        let mut pts = Vec::new();
        for i in 0..3 {
            pts.push((p(i as f64, 1.0), 1));
            pts.push((p(i as f64 + 1e-12, 1.0), 1));
        }
        let cl = cluster(&pts, CLUSTER_TOL, AMBIGUITY_BAND).unwrap();
        assert_eq!(partition(cl.iter().map(|c| c.mult)), vec![2, 2, 2]);
    }

    #[test]
    fn ambiguous_gap() {
        let pts = vec![(p(0.0, 0.0), 1), (p(1e-4, 0.0), 1), (p(1.0, 1.0), 1)];
        assert!(matches!(
            cluster(&pts, CLUSTER_TOL, AMBIGUITY_BAND),
            Err(NumericError::AmbiguousClustering { .. })
        ));
    }
}
