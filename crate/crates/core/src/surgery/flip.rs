use super::{Move, MoveKind, SurgeryError};
use crate::complex::{Edge, Triangulation};

/// Replaces the faces `u v x`, `u v y` around the inner edge `uv` by
/// `x y u`, `x y v`.
pub fn diagonal_flip(t: &Triangulation, e: Edge) -> Result<(Triangulation, Move), SurgeryError> {
    let apexes = t.apexes(e).map_err(|_| SurgeryError::UnknownEdge(e))?;
    let &[x, y] = apexes.as_slice() else {
        return Err(SurgeryError::BoundaryEdgeFlip(e));
    };
    if t.has_edge(x, y) {
        return Err(SurgeryError::FlipCreatesMultiEdge(Edge::new(x, y)));
    }
    let (u, v) = e.endpoints();
    let m = Move::new(
        MoveKind::Flip,
        vec![u, v, x, y],
        vec![[u, v, x], [u, v, y]],
        vec![[x, y, u], [x, y, v]],
    );
    Ok((m.apply(t)?, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::is_equivalent;
    use crate::fixtures;

    #[test]
    fn flip_is_an_involution() {
        let d = fixtures::disk_oct();
        let (u, m) = diagonal_flip(&d, Edge::new(1, 3)).unwrap();
        assert_eq!(u.classify(), d.classify());
        assert!(u.has_edge(2, 4) && !u.has_edge(1, 3));
        let (back, _) = diagonal_flip(&u, Edge::new(m.site[2], m.site[3])).unwrap();
        assert!(is_equivalent(&back, &d));
        assert!(is_equivalent(&m.inverse().apply(&u).unwrap(), &d));
    }

    #[test]
    fn flip_errors() {
        let m1 = fixtures::mobius_m1();
        assert_eq!(
            diagonal_flip(&m1, Edge::new(1, 2)).unwrap_err(),
            SurgeryError::FlipCreatesMultiEdge(Edge::new(3, 5))
        );
        let d = fixtures::disk_oct();
        assert_eq!(
            diagonal_flip(&d, Edge::new(2, 6)).unwrap_err(),
            SurgeryError::BoundaryEdgeFlip(Edge::new(2, 6))
        );
        assert_eq!(
            diagonal_flip(&d, Edge::new(1, 5)).unwrap_err(),
            SurgeryError::UnknownEdge(Edge::new(1, 5))
        );
    }
}
