//! K-body interaction topologies: which qubits each S_j = σ_x ⊗ ⋯ ⊗ σ_x couples.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The Q groups of K qubit indices (1-based) defining the interaction terms.
///
/// Construction only checks structure (group sizes, index ranges, distinct
/// members). The physical invariants are reported by [`validate_topology`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TopologyJson", into = "TopologyJson")]
pub struct InteractionTopology {
    num_qubits: usize,
    order: usize,
    groups: Vec<Vec<usize>>,
    /// Number of polygon sides when built by [`build_polygon_topology`].
    polygon_sides: Option<usize>,
}

#[derive(Serialize, Deserialize)]
struct TopologyJson {
    #[serde(rename = "M")]
    num_qubits: usize,
    #[serde(rename = "K")]
    order: usize,
    groups: Vec<Vec<usize>>,
}

impl TryFrom<TopologyJson> for InteractionTopology {
    type Error = Error;

    fn try_from(raw: TopologyJson) -> Result<Self> {
        InteractionTopology::new(raw.num_qubits, raw.order, raw.groups)
    }
}

impl From<InteractionTopology> for TopologyJson {
    fn from(t: InteractionTopology) -> Self {
        TopologyJson { num_qubits: t.num_qubits, order: t.order, groups: t.groups }
    }
}

impl InteractionTopology {
    pub fn new(num_qubits: usize, order: usize, groups: Vec<Vec<usize>>) -> Result<Self> {
        if num_qubits == 0 {
            return Err(Error::InvalidParameters("M must be at least 1".into()));
        }
        if order < 2 {
            return Err(Error::InvalidParameters(format!("K = {order} must be at least 2")));
        }
        for (j, group) in groups.iter().enumerate() {
            if group.len() != order {
                return Err(Error::InvalidParameters(format!(
                    "group {} has {} members, expected K = {order}",
                    j + 1,
                    group.len()
                )));
            }
            if let Some(&q) = group.iter().find(|&&q| q == 0 || q > num_qubits) {
                return Err(Error::InvalidParameters(format!(
                    "group {} references qubit {q} outside 1..={num_qubits}",
                    j + 1
                )));
            }
            let mut sorted = group.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidParameters(format!("group {} repeats a qubit", j + 1)));
            }
        }
        Ok(Self { num_qubits, order, groups, polygon_sides: None })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    /// Q, the number of interaction terms.
    pub fn num_groups(&self) -> usize {
        self.groups.len()
    }

    pub fn polygon_sides(&self) -> Option<usize> {
        self.polygon_sides
    }

    /// Bit mask of each group over the state index (qubit `i` is bit `M - i`).
    pub fn group_masks(&self) -> Vec<usize> {
        assert!(self.num_qubits < usize::BITS as usize, "too many qubits for index masks");
        self.groups
            .iter()
            .map(|g| g.iter().fold(0usize, |m, &q| m | qubit_bit(self.num_qubits, q)))
            .collect()
    }

    /// How many groups contain each qubit, indexed by qubit − 1.
    pub fn coverage(&self) -> Vec<usize> {
        let mut counts = vec![0; self.num_qubits];
        for &q in self.groups.iter().flatten() {
            counts[q - 1] += 1;
        }
        counts
    }
}

/// Index bit of qubit `q` (1-based) among `m` qubits.
pub fn qubit_bit(m: usize, q: usize) -> usize {
    1usize << (m - q)
}

/// Polygon arrangement: L = M/(K−1) sides of K consecutive qubits sharing
/// vertices, plus interior groups chunking the non-vertex qubits by K.
///
/// Qubit 1 is a vertex; vertices sit every K−1 positions. Interior qubits are
/// grouped in ascending order.
pub fn build_polygon_topology(num_qubits: usize, order: usize) -> Result<InteractionTopology> {
    if order < 2 {
        return Err(Error::InvalidParameters(format!("K >= 2 violated (K = {order})")));
    }
    if num_qubits == 0 || !num_qubits.is_multiple_of(order - 1) {
        return Err(Error::InvalidParameters(format!(
            "(K-1) divides M violated (M = {num_qubits}, K-1 = {})",
            order - 1
        )));
    }
    let sides = num_qubits / (order - 1);
    if sides < 3 {
        return Err(Error::InvalidParameters(format!(
            "L >= 3 violated (L = M/(K-1) = {sides}); a polygon needs at least three sides"
        )));
    }
    let interior_qubits = sides * (order - 2);
    if !interior_qubits.is_multiple_of(order) {
        return Err(Error::InvalidParameters(format!(
            "K divides L(K-2) violated (L(K-2) = {interior_qubits}, K = {order})"
        )));
    }

    let vertex = |j: usize| j * (order - 1) + 1;
    let mut groups: Vec<Vec<usize>> = (0..sides)
        .map(|j| (0..order).map(|l| (vertex(j) - 1 + l) % num_qubits + 1).collect())
        .collect();

    let interior: Vec<usize> = (1..=num_qubits).filter(|q| (q - 1) % (order - 1) != 0).collect();
    debug_assert_eq!(interior.len(), interior_qubits);
    for chunk in interior.chunks(order) {
        assert!(chunk.windows(2).all(|w| w[0] < w[1]), "interior chunk repeats a qubit");
        groups.push(chunk.to_vec());
    }

    let mut topology = InteractionTopology::new(num_qubits, order, groups)?;
    topology.polygon_sides = Some(sides);
    Ok(topology)
}

/// Q = L + L(K−2)/K for an L-sided polygon of order K.
pub fn polygon_group_count(sides: usize, order: usize) -> usize {
    sides + sides * (order - 2) / order
}

/// Whether (M, K) admits a polygon topology.
pub fn is_valid_polygon(num_qubits: usize, order: usize) -> bool {
    build_polygon_topology(num_qubits, order).is_ok()
}

/// All (M, K) polygon parameters with M ≤ `max_qubits`, ordered by M then K.
pub fn valid_polygons(max_qubits: usize) -> Vec<(usize, usize)> {
    (1..=max_qubits)
        .flat_map(|m| (2..=m + 1).map(move |k| (m, k)))
        .filter(|&(m, k)| is_valid_polygon(m, k))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopologyCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopologyValidation {
    pub checks: Vec<TopologyCheck>,
}

impl TopologyValidation {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&TopologyCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Checks each invariant the interaction model relies on; never fails.
pub fn validate_topology(t: &InteractionTopology) -> TopologyValidation {
    let mut checks = Vec::new();
    let mut push = |name: &str, pass: bool, detail: String| {
        checks.push(TopologyCheck { name: name.to_string(), pass, detail });
    };

    let coverage = t.coverage();
    let bad: Vec<String> = coverage
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 2)
        .map(|(i, c)| format!("qubit {} in {c} groups", i + 1))
        .collect();
    push(
        "coverage_exactly_two",
        bad.is_empty(),
        if bad.is_empty() { "every qubit in exactly 2 groups".into() } else { bad.join("; ") },
    );

    let odd: Vec<String> = coverage
        .iter()
        .enumerate()
        .filter(|(_, &c)| c % 2 == 1)
        .map(|(i, _)| (i + 1).to_string())
        .collect();
    push(
        "product_is_identity",
        odd.is_empty(),
        if odd.is_empty() {
            "every qubit covered an even number of times".into()
        } else {
            format!("odd cover on qubits {}", odd.join(","))
        },
    );

    let mut keys: Vec<Vec<usize>> = t
        .groups
        .iter()
        .map(|g| {
            let mut s = g.clone();
            s.sort_unstable();
            s
        })
        .collect();
    keys.sort();
    let duplicates = keys.windows(2).filter(|w| w[0] == w[1]).count();
    push(
        "distinct_groups",
        duplicates == 0,
        format!("{duplicates} repeated groups"),
    );

    let components = group_components(t);
    push(
        "connected",
        components == 1,
        format!("{components} connected components among {} groups", t.num_groups()),
    );

    if let Some(sides) = t.polygon_sides {
        let expected = polygon_group_count(sides, t.order);
        push(
            "q_formula",
            expected == t.num_groups(),
            format!("Q = {}, L + L(K-2)/K = {expected}", t.num_groups()),
        );
    }

    TopologyValidation { checks }
}

/// Connected components of the incidence graph: groups are nodes and each
/// qubit joins every group that contains it.
fn group_components(t: &InteractionTopology) -> usize {
    let q = t.num_groups();
    if q == 0 {
        return 0;
    }
    let mut parent: Vec<usize> = (0..q).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut first_group: Vec<Option<usize>> = vec![None; t.num_qubits];
    for (j, group) in t.groups.iter().enumerate() {
        for &qubit in group {
            match first_group[qubit - 1] {
                None => first_group[qubit - 1] = Some(j),
                Some(other) => {
                    let (a, b) = (find(&mut parent, j), find(&mut parent, other));
                    parent[a] = b;
                }
            }
        }
    }
    (0..q).filter(|&j| find(&mut parent, j) == j).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hexagon_of_triples() {
        let t = build_polygon_topology(6, 3).unwrap();
        assert_eq!(
            t.groups(),
            &[vec![1, 2, 3], vec![3, 4, 5], vec![5, 6, 1], vec![2, 4, 6]]
        );
        assert_eq!(t.num_groups(), 4);
        // qubit 2 interacts with 1,3 and with 4,6
        let with_two: Vec<_> = t.groups().iter().filter(|g| g.contains(&2)).collect();
        assert_eq!(with_two, vec![&vec![1, 2, 3], &vec![2, 4, 6]]);
        assert!(validate_topology(&t).all_pass());
    }

    #[test]
    fn square_of_quadruples() {
        let t = build_polygon_topology(12, 4).unwrap();
        assert_eq!(t.polygon_sides(), Some(4));
        assert_eq!(t.num_groups(), 6);
        assert!(validate_topology(&t).all_pass());
    }

    #[test]
    fn order_two_is_a_ring() {
        let t = build_polygon_topology(6, 2).unwrap();
        let expected: Vec<Vec<usize>> = (1..=6).map(|i| vec![i, i % 6 + 1]).collect();
        assert_eq!(t.groups(), expected.as_slice());
        assert_eq!(t.num_groups(), polygon_group_count(6, 2));
        assert!(validate_topology(&t).all_pass());
    }

    #[test]
    fn divisibility_errors_name_the_condition() {
        let msg = |m, k| build_polygon_topology(m, k).unwrap_err().to_string();
        assert!(msg(6, 1).contains("K >= 2"));
        assert!(msg(7, 3).contains("(K-1) divides M"));
        assert!(msg(9, 4).contains("K divides L(K-2)"));
        assert!(msg(2, 2).contains("L >= 3"));
    }

    #[test]
    fn uncovered_qubit_fails() {
        let t = InteractionTopology::new(3, 2, vec![vec![1, 2], vec![2, 3]]).unwrap();
        let report = validate_topology(&t);
        assert!(!report.all_pass());
        let coverage = report.check("coverage_exactly_two").unwrap();
        assert!(!coverage.pass);
        assert!(coverage.detail.contains("qubit 1 in 1 groups"));
        assert!(coverage.detail.contains("qubit 3 in 1 groups"));
        assert!(!report.check("product_is_identity").unwrap().pass);
        assert!(report.check("q_formula").is_none());
    }

    #[test]
    fn disjoint_rings_fail_connectivity() {
        let ring = |offset: usize| (0..4).map(move |i| vec![offset + i + 1, offset + (i + 1) % 4 + 1]);
        let groups: Vec<Vec<usize>> = ring(0).chain(ring(4)).collect();
        let t = InteractionTopology::new(8, 2, groups).unwrap();
        let report = validate_topology(&t);
        assert!(report.check("coverage_exactly_two").unwrap().pass);
        assert!(report.check("product_is_identity").unwrap().pass);
        assert!(!report.check("connected").unwrap().pass);
    }

    #[test]
    fn repeated_pair_is_flagged() {
        let t = InteractionTopology::new(2, 2, vec![vec![1, 2], vec![1, 2]]).unwrap();
        let report = validate_topology(&t);
        assert!(!report.check("distinct_groups").unwrap().pass);
    }

    #[test]
    fn structural_errors() {
        assert!(InteractionTopology::new(3, 2, vec![vec![1, 2, 3]]).is_err());
        assert!(InteractionTopology::new(3, 2, vec![vec![1, 4]]).is_err());
        assert!(InteractionTopology::new(3, 2, vec![vec![2, 2]]).is_err());
        assert!(InteractionTopology::new(0, 2, vec![]).is_err());
    }

    #[test]
    fn json_schema() {
        let t = build_polygon_topology(6, 3).unwrap();
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, r#"{"M":6,"K":3,"groups":[[1,2,3],[3,4,5],[5,6,1],[2,4,6]]}"#);
        let back: InteractionTopology = serde_json::from_str(&json).unwrap();
        assert_eq!(back.groups(), t.groups());
        assert!(serde_json::from_str::<InteractionTopology>(r#"{"M":3,"K":2,"groups":[[1,5]]}"#).is_err());
    }

    #[test]
    fn masks_follow_big_endian_convention() {
        let t = build_polygon_topology(3, 2).unwrap();
        assert_eq!(t.group_masks(), vec![0b110, 0b011, 0b101]);
    }
}
