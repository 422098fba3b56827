/// Exact isomorphism test for small undirected simple graphs given as
/// adjacency lists on `0..n`. Backtracking with degree pruning.
pub fn graphs_isomorphic(a: &[Vec<usize>], b: &[Vec<usize>]) -> bool {
    let n = a.len();
    if n != b.len() {
        return false;
    }
    let mut da: Vec<usize> = a.iter().map(Vec::len).collect();
    let mut db: Vec<usize> = b.iter().map(Vec::len).collect();
    let (deg_a, deg_b) = (da.clone(), db.clone());
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    let matrix = |adj: &[Vec<usize>]| {
        let mut m = vec![false; n * n];
        for (u, nbrs) in adj.iter().enumerate() {
            for &v in nbrs {
                m[u * n + v] = true;
            }
        }
        m
    };
    let (ma, mb) = (matrix(a), matrix(b));

    // Map high-degree vertices first: they constrain the search the most.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(deg_a[v]));
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];

    #[allow(clippy::too_many_arguments)]
    fn search(
        k: usize,
        order: &[usize],
        image: &mut [usize],
        used: &mut [bool],
        ma: &[bool],
        mb: &[bool],
        deg_a: &[usize],
        deg_b: &[usize],
        n: usize,
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let u = order[k];
        for cand in 0..n {
            if used[cand] || deg_b[cand] != deg_a[u] {
                continue;
            }
            let consistent = order[..k]
                .iter()
                .all(|&w| ma[u * n + w] == mb[cand * n + image[w]]);
            if !consistent {
                continue;
            }
            image[u] = cand;
            used[cand] = true;
            if search(k + 1, order, image, used, ma, mb, deg_a, deg_b, n) {
                return true;
            }
            used[cand] = false;
        }
        image[u] = usize::MAX;
        false
    }

    search(0, &order, &mut image, &mut used, &ma, &mb, &deg_a, &deg_b, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn adj(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
        let mut a = vec![Vec::new(); n];
        for &(u, v) in edges {
            a[u].push(v);
            a[v].push(u);
        }
        a
    }

    #[test]
    fn cycles_and_paths() {
        let c4 = adj(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let c4b = adj(4, &[(0, 2), (2, 1), (1, 3), (3, 0)]);
        let p4 = adj(4, &[(0, 1), (1, 2), (2, 3)]);
        assert!(graphs_isomorphic(&c4, &c4b));
        assert!(!graphs_isomorphic(&c4, &p4));
    }

    #[test]
    fn same_degrees_different_graphs() {
        // Two triangles vs a hexagon: both 2-regular on 6 vertices.
        let two_tri = adj(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        let hex = adj(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]);
        assert!(!graphs_isomorphic(&two_tri, &hex));
        assert!(graphs_isomorphic(&hex, &hex));
    }
}
