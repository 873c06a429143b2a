use super::{Decomposition, DecompositionError, Kind};
use crate::graph::{is_separation, Graph};
use crate::median::{
    build_lattice_embedding, cartesian_product_many, classify_pair, mixed_radix_index,
    strong_direction_partition, theta_classes, LatticeEmbedding, PairRelation,
};
use crate::VertexSet;

fn validate_all(decs: &[Decomposition], g: &Graph) -> Result<(), DecompositionError> {
    for (index, d) in decs.iter().enumerate() {
        d.validate(g).map_err(|violation| DecompositionError::Invalid { index, violation })?;
    }
    Ok(())
}

/// Largest `|Z^1_{u_1} ∩ ... ∩ Z^i_{u_i}|` over all choices of one node per
/// decomposition.
pub fn max_transversal_intersection(decs: &[Decomposition]) -> usize {
    fn go(decs: &[Decomposition], acc: &VertexSet, best: &mut usize) {
        if acc.len() <= *best {
            return;
        }
        match decs.split_first() {
            None => *best = acc.len(),
            Some((d, rest)) => {
                for bag in d.bags() {
                    go(rest, &acc.intersection(bag), best);
                }
            }
        }
    }
    let Some(universe) = decs.iter().flat_map(|d| d.bags()).fold(None::<VertexSet>, |acc, b| {
        Some(acc.map_or_else(|| b.clone(), |a| a.union(b)))
    }) else {
        return 0;
    };
    let mut best = 0;
    go(decs, &universe, &mut best);
    best
}

/// Median decomposition on the product of the hosts whose bag at
/// `(u_1, ..., u_i)` is `Z^1_{u_1} ∩ ... ∩ Z^i_{u_i}`.
pub fn product_decomposition(
    decs: &[Decomposition],
    g: &Graph,
) -> Result<Decomposition, DecompositionError> {
    if decs.is_empty() {
        return Err(DecompositionError::Empty);
    }
    if let Some(d) = decs.iter().find(|d| d.kind() == Kind::Median) {
        return Err(DecompositionError::WrongKind(d.kind()));
    }
    validate_all(decs, g)?;
    if decs.len() == 1 {
        return decs[0].with_kind(Kind::Median);
    }
    let hosts: Vec<&Graph> = decs.iter().map(|d| d.host()).collect();
    let product = cartesian_product_many(&hosts);
    let bags = product
        .coords
        .iter()
        .map(|c| {
            let mut bag = decs[0].bag(c[0]).clone();
            for (j, d) in decs.iter().enumerate().skip(1) {
                bag.intersect_with(d.bag(c[j]));
            }
            bag
        })
        .collect();
    Decomposition::median(product.graph, bags)
}

fn colour_classes(g: &Graph, colouring: &[usize]) -> Result<Vec<Vec<usize>>, DecompositionError> {
    if colouring.len() != g.order() {
        return Err(DecompositionError::BadColouring(format!(
            "{} colours for {} vertices",
            colouring.len(),
            g.order()
        )));
    }
    if let Some((u, v)) = crate::cliques::monochromatic_edge(g, colouring) {
        return Err(DecompositionError::ImproperColouring(u, v));
    }
    let k = colouring.iter().copied().max().unwrap_or(0);
    if colouring.contains(&0) {
        return Err(DecompositionError::BadColouring("colours start at 1".into()));
    }
    let classes: Vec<Vec<usize>> =
        (1..=k).map(|c| (0..g.order()).filter(|&v| colouring[v] == c).collect()).collect();
    if let Some(c) = classes.iter().position(Vec::is_empty) {
        return Err(DecompositionError::BadColouring(format!("colour {} is unused", c + 1)));
    }
    Ok(classes)
}

/// One path decomposition per colour class `C`: bag `u` is the `u`-th vertex
/// of `C` (ascending) together with `V \ C`.
pub fn chromatic_path_decompositions(
    g: &Graph,
    colouring: &[usize],
) -> Result<Vec<Decomposition>, DecompositionError> {
    let classes = colour_classes(g, colouring)?;
    let all = g.vertices();
    Ok(classes
        .iter()
        .map(|class| {
            let rest = all.difference(&class.iter().copied().collect());
            Decomposition::path(
                class
                    .iter()
                    .map(|&v| {
                        let mut bag = rest.clone();
                        bag.insert(v);
                        bag
                    })
                    .collect(),
            )
        })
        .collect())
}

/// Host is the product of one path per colour class (on that class's
/// vertices); the bag at a node holds the vertex named by each coordinate.
pub fn chromatic_median_decomposition(
    g: &Graph,
    colouring: &[usize],
) -> Result<Decomposition, DecompositionError> {
    let paths = chromatic_path_decompositions(g, colouring)?;
    if paths.is_empty() {
        return Ok(Decomposition::trivial(Kind::Median, g));
    }
    product_decomposition(&paths, g)
}

/// Projection of a median decomposition onto the axes of a lattice
/// embedding of its host.
#[derive(Clone, Debug)]
pub struct Extraction {
    pub embedding: LatticeEmbedding,
    /// One path decomposition per axis; `paths[j]` has one bag per value of
    /// coordinate `j`.
    pub paths: Vec<Decomposition>,
}

impl Extraction {
    /// Whether the product of the extracted paths is the original
    /// decomposition: same node count, bags equal at corresponding
    /// coordinates, host edges preserved.
    pub fn round_trip_matches(&self, original: &Decomposition, g: &Graph) -> Result<bool, DecompositionError> {
        let product = product_decomposition(&self.paths, g)?;
        if product.node_count() != original.node_count() {
            return Ok(false);
        }
        let lens: Vec<usize> = self.paths.iter().map(Decomposition::node_count).collect();
        let image: Vec<usize> = (0..original.node_count())
            .map(|a| mixed_radix_index(&lens, &self.coords(a)))
            .collect();
        let bags_match = (0..original.node_count()).all(|a| product.bag(image[a]) == original.bag(a));
        let edges_match = original.host().size() == product.host().size()
            && original.host().edges().all(|(a, b)| product.host().has_edge(image[a], image[b]));
        Ok(bags_match && edges_match)
    }

    fn coords(&self, a: usize) -> Vec<usize> {
        if self.embedding.dimension() == 0 {
            vec![0]
        } else {
            self.embedding.coordinates[a].clone()
        }
    }
}

/// Axis `j` gets path bags `Z^j_u = ⋃ { X_a : φ_j(a) = u }`. Each result is
/// validated and `X_a = ⋂_j Z^j_{φ_j(a)}` is re-checked for every node.
pub fn extract_path_decompositions(
    d: &Decomposition,
    g: &Graph,
) -> Result<Extraction, DecompositionError> {
    d.validate(g).map_err(|violation| DecompositionError::Invalid { index: 0, violation })?;
    let host = d.host();
    let directions = strong_direction_partition(host)?;
    let embedding = build_lattice_embedding(host, &directions)?;
    let lens: Vec<usize> =
        if embedding.dimension() == 0 { vec![1] } else { embedding.path_lengths.clone() };
    let extraction = Extraction { embedding, paths: Vec::new() };
    let mut paths = Vec::with_capacity(lens.len());
    for (j, &len) in lens.iter().enumerate() {
        let mut bags = vec![VertexSet::new(); len];
        for a in 0..d.node_count() {
            bags[extraction.coords(a)[j]].union_with(d.bag(a));
        }
        paths.push(Decomposition::path(bags));
    }
    validate_all(&paths, g)?;
    for a in 0..d.node_count() {
        let c = extraction.coords(a);
        let mut meet = paths[0].bag(c[0]).clone();
        for (j, p) in paths.iter().enumerate().skip(1) {
            meet.intersect_with(p.bag(c[j]));
        }
        if &meet != d.bag(a) {
            return Err(DecompositionError::IntersectionMismatch { node: a });
        }
    }
    Ok(Extraction { paths, ..extraction })
}

/// The sets attached to a host edge `ab`: `Y_ab` is the union of bags over
/// `W_ab`, `Z_ab` the union over `U_ab`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSeparation {
    pub edge: (usize, usize),
    pub y_ab: VertexSet,
    pub y_ba: VertexSet,
    pub z_ab: VertexSet,
    pub z_ba: VertexSet,
    /// `Z_ab ∩ Z_ba`.
    pub separator: VertexSet,
}

pub fn edge_separation(d: &Decomposition, a: usize, b: usize) -> EdgeSeparation {
    let host = d.host();
    let dist = host.distances();
    let w_ab: VertexSet = (0..host.order()).filter(|&x| dist.raw(x, a) < dist.raw(x, b)).collect();
    let w_ba = host.vertices().difference(&w_ab);
    let u_ab = w_ab.intersection(&host.neighborhood(&w_ba));
    let u_ba = w_ba.intersection(&host.neighborhood(&w_ab));
    let union = |s: &VertexSet| {
        s.iter().fold(VertexSet::new(), |mut acc, x| {
            acc.union_with(d.bag(x));
            acc
        })
    };
    let z_ab = union(&u_ab);
    let z_ba = union(&u_ba);
    EdgeSeparation {
        edge: (a, b),
        y_ab: union(&w_ab),
        y_ba: union(&w_ba),
        separator: z_ab.intersection(&z_ba),
        z_ab,
        z_ba,
    }
}

/// A host edge whose sets fail to form a separation of `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YzWitness(pub EdgeSeparation);

/// For every host edge `ab`, `(Y_ab ∪ S, Y_ba ∪ S)` with `S = Z_ab ∩ Z_ba`
/// must separate `g`.
pub fn y_z_separation_check(d: &Decomposition, g: &Graph) -> Result<(), YzWitness> {
    for (a, b) in d.host().edges() {
        let sep = edge_separation(d, a, b);
        let left = sep.y_ab.union(&sep.separator);
        let right = sep.y_ba.union(&sep.separator);
        if !is_separation(g, &left, &right) {
            return Err(YzWitness(sep));
        }
    }
    Ok(())
}

/// Two laminar host classes, named by defining edges, whose separations of
/// `g` are not nested.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaminarWitness {
    pub first: (usize, usize),
    pub second: (usize, usize),
}

/// For every pair of laminar host Θ-classes with `W_1 ⊆ W_2` (and so
/// `W_2' ⊆ W_1'`), checks `Y_1 ⊆ Y_2` and `Y_2' ⊆ Y_1'` in `g`. Crossing
/// pairs are exempt.
pub fn laminar_separation_check(d: &Decomposition, _g: &Graph) -> Result<(), LaminarWitness> {
    let Ok(classes) = theta_classes(d.host()) else {
        return Ok(());
    };
    let y = |w: &VertexSet| {
        w.iter().fold(VertexSet::new(), |mut acc, x| {
            acc.union_with(d.bag(x));
            acc
        })
    };
    for i in 0..classes.len() {
        for j in (i + 1)..classes.len() {
            let (c1, c2) = (&classes[i], &classes[j]);
            let witness = LaminarWitness { first: c1.defining_edge, second: c2.defining_edge };
            match classify_pair(c1, c2).map_err(|_| witness.clone())? {
                PairRelation::Cross => {}
                PairRelation::Laminar { first, second } => {
                    let nested = y(c1.w(first)).is_subset(&y(c2.w(second)))
                        && y(c2.w(second.flip())).is_subset(&y(c1.w(first.flip())));
                    if !nested {
                        return Err(witness);
                    }
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::vset;

    #[test]
    fn product_of_k22_colour_classes() {
        let g = generators::complete_multipartite(&[2, 2]);
        let paths = chromatic_path_decompositions(&g, &[1, 1, 2, 2]).unwrap();
        assert_eq!(paths[0].bags(), &[vset![0, 2, 3], vset![1, 2, 3]]);
        let m = product_decomposition(&paths, &g).unwrap();
        assert_eq!(m.host(), &generators::grid(2, 2));
        assert!(m.bags().iter().all(|b| b.len() == 2));
        assert_eq!(m.validate(&g), Ok(()));
        assert_eq!(max_transversal_intersection(&paths), 2);
    }

    #[test]
    fn product_unit_and_trivial() {
        let g = generators::cycle(5);
        let t = Decomposition::trivial(Kind::Path, &g);
        let one = product_decomposition(std::slice::from_ref(&t), &g).unwrap();
        assert_eq!(one.kind(), Kind::Median);
        assert_eq!(one.bags(), t.bags());
        let two = product_decomposition(&[t.clone(), t], &g).unwrap();
        assert_eq!(two.node_count(), 1);
        assert_eq!(two.bag(0), &g.vertices());
        assert_eq!(product_decomposition(&[], &g), Err(DecompositionError::Empty));
    }

    #[test]
    fn chromatic_examples() {
        let c5 = generators::cycle(5);
        let d = chromatic_median_decomposition(&c5, &[1, 2, 1, 2, 3]).unwrap();
        assert_eq!(d.width().max_bag, 3);
        assert_eq!(d.node_count(), 4);
        assert_eq!(d.validate(&c5), Ok(()));
        assert_eq!(y_z_separation_check(&d, &c5), Ok(()));
        let k2 = generators::complete(2);
        let d = chromatic_median_decomposition(&k2, &[1, 2]).unwrap();
        assert_eq!(d.node_count(), 1);
        assert_eq!(d.width().max_bag, 2);
        let k4 = generators::complete(4);
        let d = chromatic_median_decomposition(&k4, &[1, 2, 3, 4]).unwrap();
        assert_eq!(d.bags(), &[vset![0, 1, 2, 3]]);
        assert_eq!(
            chromatic_median_decomposition(&c5, &[1, 2, 1, 2, 1]),
            Err(DecompositionError::ImproperColouring(0, 4))
        );
        assert!(chromatic_median_decomposition(&c5, &[1, 3, 1, 3, 4]).is_err());
    }

    #[test]
    fn extraction_of_chromatic_c5() {
        let c5 = generators::cycle(5);
        let d = chromatic_median_decomposition(&c5, &[1, 2, 1, 2, 3]).unwrap();
        let ex = extract_path_decompositions(&d, &c5).unwrap();
        // the colour-3 axis has one vertex, so the host is 2 x 2 and embeds in two axes
        assert_eq!(ex.paths.len(), 2);
        assert!(ex.round_trip_matches(&d, &c5).unwrap());
    }

    #[test]
    fn path_host_extracts_itself() {
        let g = generators::path(4);
        let p = Decomposition::path(vec![vset![0, 1], vset![1, 2], vset![2, 3]]);
        let m = p.with_kind(Kind::Median).unwrap();
        let ex = extract_path_decompositions(&m, &g).unwrap();
        assert_eq!(ex.paths, vec![p]);
        let k1 = Decomposition::trivial(Kind::Median, &g);
        let ex = extract_path_decompositions(&k1, &g).unwrap();
        assert_eq!(ex.paths, vec![Decomposition::trivial(Kind::Path, &g)]);
    }

    #[test]
    fn laminar_checks() {
        let g = generators::path(4);
        let p = Decomposition::path(vec![vset![0, 1], vset![1, 2], vset![2, 3]]);
        let m = p.with_kind(Kind::Median).unwrap();
        assert_eq!(laminar_separation_check(&m, &g), Ok(()));
        let prod = product_decomposition(&[p.clone(), p], &g).unwrap();
        assert_eq!(laminar_separation_check(&prod, &g), Ok(()));
        assert_eq!(y_z_separation_check(&prod, &g), Ok(()));
    }
}
