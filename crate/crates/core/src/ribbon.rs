//! Band-neighborhood surfaces of diagrams as combinatorial maps:
//! crossings become 4-valent vertices with a dart rotation, semi-arc runs
//! become bands whose twist bit is the parity of bars along the run, and
//! crossing-free components become free annulus/Möbius bands. Includes
//! surface invariants (orientability, Euler characteristic, boundary
//! count, genus/crosscaps), the orientation double cover, and a small
//! exact isomorphism test.

use crate::gauss::{Strand, Symbol, TwistedCode};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap, VecDeque};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Role {
    OverIn,
    UnderIn,
    OverOut,
    UnderOut,
}

impl Role {
    pub const ALL: [Role; 4] = [Role::OverIn, Role::UnderIn, Role::OverOut, Role::UnderOut];

    /// Exchange over/under, keeping the in/out direction: the relabeling
    /// performed by an inversion.
    pub fn swapped(self) -> Role {
        match self {
            Role::OverIn => Role::UnderIn,
            Role::UnderIn => Role::OverIn,
            Role::OverOut => Role::UnderOut,
            Role::UnderOut => Role::OverOut,
        }
    }
}

/// Counterclockwise dart order in the local frame, fixed by the crossing
/// sign: positive crossings read (over-in, under-in, over-out, under-out),
/// negative ones the mirror image.
pub fn standard_rotation(sign: i8) -> [Role; 4] {
    if sign > 0 {
        [Role::OverIn, Role::UnderIn, Role::OverOut, Role::UnderOut]
    } else {
        [Role::OverIn, Role::UnderOut, Role::OverOut, Role::UnderIn]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RibbonVertex {
    pub sign: i8,
    pub rotation: [Role; 4],
    /// Local orientation bit; inversions toggle it together with the
    /// over/under relabeling and the incident twist bits.
    pub orientation: bool,
}

pub type Dart = (u32, Role);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RibbonEdge {
    pub ends: [Dart; 2],
    pub twist: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RibbonDiagram {
    pub vertices: BTreeMap<u32, RibbonVertex>,
    pub edges: Vec<RibbonEdge>,
    /// Crossing-free components, one bool per band: true for an odd bar
    /// count (Möbius band), false for an annulus.
    pub free_loops: Vec<bool>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RibbonError {
    #[error("malformed ribbon diagram: {0}")]
    Malformed(String),
    #[error("diagram too large for isomorphism search: {0} crossings (limit {1})")]
    TooLarge(usize, usize),
}

/// Connected pieces of the surface, reported separately.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfacePiece {
    /// Crossing ids in this piece; empty for a free loop band.
    pub crossings: Vec<u32>,
    pub orientable: bool,
    pub euler_characteristic: i64,
    pub boundary_components: usize,
    /// Genus when orientable, crosscap number otherwise.
    pub genus_or_crosscaps: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceInvariants {
    pub pieces: Vec<SurfacePiece>,
}

impl SurfaceInvariants {
    pub fn orientable(&self) -> bool {
        self.pieces.iter().all(|p| p.orientable)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.pieces.iter().map(|p| p.euler_characteristic).sum()
    }

    pub fn boundary_components(&self) -> usize {
        self.pieces.iter().map(|p| p.boundary_components).sum()
    }
}

impl RibbonDiagram {
    pub fn validate(&self) -> Result<(), RibbonError> {
        for (id, v) in &self.vertices {
            if v.sign != 1 && v.sign != -1 {
                return Err(RibbonError::Malformed(format!("vertex {id} has sign {}", v.sign)));
            }
            let mut roles = v.rotation.to_vec();
            roles.sort_unstable();
            if roles != Role::ALL.to_vec() {
                return Err(RibbonError::Malformed(format!(
                    "vertex {id} rotation is not a permutation of the four roles"
                )));
            }
            let std = standard_rotation(v.sign);
            let matches_std = (0..4).any(|k| (0..4).all(|i| v.rotation[(i + k) % 4] == std[i]));
            if !matches_std {
                return Err(RibbonError::Malformed(format!(
                    "vertex {id} rotation does not have the over/under pairs diagonal for its sign"
                )));
            }
        }
        let mut seen: HashMap<Dart, usize> = HashMap::new();
        for (i, e) in self.edges.iter().enumerate() {
            for d in e.ends {
                if !self.vertices.contains_key(&d.0) {
                    return Err(RibbonError::Malformed(format!("edge {i} touches unknown vertex {}", d.0)));
                }
                if seen.insert(d, i).is_some() {
                    return Err(RibbonError::Malformed(format!(
                        "dart {:?} lies in more than one edge",
                        d
                    )));
                }
            }
        }
        if seen.len() != 4 * self.vertices.len() {
            return Err(RibbonError::Malformed(format!(
                "{} darts paired, expected {}",
                seen.len(),
                4 * self.vertices.len()
            )));
        }
        Ok(())
    }

    /// Apply an inversion at every vertex whose local orientation bit is
    /// unset, leaving an equivalent diagram with all bits positive.
    pub fn normalized(&self) -> RibbonDiagram {
        let mut out = self.clone();
        let flipped: Vec<u32> = out
            .vertices
            .iter()
            .filter(|(_, v)| !v.orientation)
            .map(|(id, _)| *id)
            .collect();
        for id in &flipped {
            let v = out.vertices.get_mut(id).unwrap();
            v.orientation = true;
            // reverse the frame and swap over/under: the rotation list is
            // again the standard one for the (unchanged) sign
            v.rotation = standard_rotation(v.sign);
        }
        for e in &mut out.edges {
            for d in &mut e.ends {
                if flipped.contains(&d.0) {
                    e.twist ^= true;
                    d.1 = d.1.swapped();
                }
            }
        }
        out
    }

    fn dart_edge_map(&self) -> HashMap<Dart, (usize, usize)> {
        let mut map = HashMap::new();
        for (i, e) in self.edges.iter().enumerate() {
            map.insert(e.ends[0], (i, 0));
            map.insert(e.ends[1], (i, 1));
        }
        map
    }

    /// Vertex ids grouped by connected piece (free loops excluded).
    fn vertex_pieces(&self) -> Vec<Vec<u32>> {
        let ids: Vec<u32> = self.vertices.keys().copied().collect();
        let index: HashMap<u32, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut parent: Vec<usize> = (0..ids.len()).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for e in &self.edges {
            let a = find(&mut parent, index[&e.ends[0].0]);
            let b = find(&mut parent, index[&e.ends[1].0]);
            parent[a] = b;
        }
        let mut groups: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
        for (i, &v) in ids.iter().enumerate() {
            groups.entry(find(&mut parent, i)).or_default().push(v);
        }
        groups.into_values().collect()
    }
}

/// Build the band-neighborhood combinatorial map of a valid code.
pub fn abstract_diagram(code: &TwistedCode) -> RibbonDiagram {
    let mut vertices = BTreeMap::new();
    for (id, _, _, sign) in code.crossing_passes() {
        vertices.insert(
            id,
            RibbonVertex { sign, rotation: standard_rotation(sign), orientation: true },
        );
    }
    let mut edges = Vec::new();
    let mut free_loops = Vec::new();
    for comp in &code.components {
        let passes: Vec<usize> =
            (0..comp.len()).filter(|&i| !comp[i].is_bar()).collect();
        if passes.is_empty() {
            free_loops.push(comp.len() % 2 == 1);
            continue;
        }
        let m = comp.len();
        for (k, &p) in passes.iter().enumerate() {
            let q = passes[(k + 1) % passes.len()];
            // bars strictly between the two passes along the traversal
            let mut bars = 0usize;
            let mut i = (p + 1) % m;
            while i != q {
                if comp[i].is_bar() {
                    bars += 1;
                }
                i = (i + 1) % m;
            }
            if passes.len() == 1 {
                // the run wraps all the way around a single pass
                bars = comp.iter().filter(|s| s.is_bar()).count();
            }
            let (from_id, from_role) = match comp[p] {
                Symbol::Cross { id, strand: Strand::Over, .. } => (id, Role::OverOut),
                Symbol::Cross { id, strand: Strand::Under, .. } => (id, Role::UnderOut),
                Symbol::Bar => unreachable!(),
            };
            let (to_id, to_role) = match comp[q] {
                Symbol::Cross { id, strand: Strand::Over, .. } => (id, Role::OverIn),
                Symbol::Cross { id, strand: Strand::Under, .. } => (id, Role::UnderIn),
                Symbol::Bar => unreachable!(),
            };
            edges.push(RibbonEdge {
                ends: [(from_id, from_role), (to_id, to_role)],
                twist: bars % 2 == 1,
            });
        }
    }
    RibbonDiagram { vertices, edges, free_loops }
}

/// Position of a role within a vertex's rotation.
fn rot_index(v: &RibbonVertex, role: Role) -> usize {
    v.rotation.iter().position(|&r| r == role).unwrap()
}

pub fn surface_invariants(rd: &RibbonDiagram) -> SurfaceInvariants {
    let rd = rd.normalized();
    let dart_map = rd.dart_edge_map();
    let mut pieces = Vec::new();
    for group in rd.vertex_pieces() {
        let in_group: Vec<bool> = rd
            .edges
            .iter()
            .map(|e| group.contains(&e.ends[0].0))
            .collect();
        let e_count = in_group.iter().filter(|&&b| b).count();
        let euler = group.len() as i64 - e_count as i64;
        let orientable = piece_orientable(&rd, &group, &dart_map);
        let boundary = piece_boundaries(&rd, &group, &dart_map);
        let genus_or_crosscaps = if orientable {
            ((2 - euler - boundary as i64) / 2).max(0) as usize
        } else {
            (2 - euler - boundary as i64).max(0) as usize
        };
        pieces.push(SurfacePiece {
            crossings: group,
            orientable,
            euler_characteristic: euler,
            boundary_components: boundary,
            genus_or_crosscaps,
        });
    }
    for &twisted in &rd.free_loops {
        pieces.push(SurfacePiece {
            crossings: vec![],
            orientable: !twisted,
            euler_characteristic: 0,
            boundary_components: if twisted { 1 } else { 2 },
            genus_or_crosscaps: if twisted { 1 } else { 0 },
        });
    }
    SurfaceInvariants { pieces }
}

/// 2-color the vertex frames so that every band is untwisted; possible
/// exactly when the piece is orientable.
fn piece_orientable(
    rd: &RibbonDiagram,
    group: &[u32],
    dart_map: &HashMap<Dart, (usize, usize)>,
) -> bool {
    let mut color: HashMap<u32, bool> = HashMap::new();
    let start = group[0];
    color.insert(start, false);
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        let cu = color[&u];
        for role in Role::ALL {
            let &(ei, side) = dart_map.get(&(u, role)).expect("well-formed diagram");
            let e = &rd.edges[ei];
            let (w, _) = e.ends[1 - side];
            let expected = cu ^ e.twist;
            match color.get(&w) {
                Some(&cw) => {
                    if cw != expected {
                        return false;
                    }
                }
                None => {
                    color.insert(w, expected);
                    queue.push_back(w);
                }
            }
        }
    }
    true
}

/// Count boundary circles of a piece by tracing flags (dart, side).
/// Crossing a band flips the side unless the band is twisted; arriving on
/// side 0 continues to the next dart in the rotation, side 1 to the
/// previous. Each boundary circle is traced once in each direction.
fn piece_boundaries(
    rd: &RibbonDiagram,
    group: &[u32],
    dart_map: &HashMap<Dart, (usize, usize)>,
) -> usize {
    let mut flags: Vec<(Dart, bool)> = Vec::with_capacity(group.len() * 8);
    for &v in group {
        for role in Role::ALL {
            flags.push(((v, role), false));
            flags.push(((v, role), true));
        }
    }
    let step = |(d, s): (Dart, bool)| -> (Dart, bool) {
        let &(ei, side) = dart_map.get(&d).expect("well-formed diagram");
        let e = &rd.edges[ei];
        let (w, role) = e.ends[1 - side];
        let s2 = if e.twist { s } else { !s };
        let vert = &rd.vertices[&w];
        let i = rot_index(vert, role);
        if !s2 {
            ((w, vert.rotation[(i + 1) % 4]), true)
        } else {
            ((w, vert.rotation[(i + 3) % 4]), false)
        }
    };
    let mut seen: HashMap<(Dart, bool), bool> = flags.iter().map(|&f| (f, false)).collect();
    let mut orbits = 0usize;
    for &f in &flags {
        if seen[&f] {
            continue;
        }
        orbits += 1;
        let mut cur = f;
        while !seen[&cur] {
            *seen.get_mut(&cur).unwrap() = true;
            cur = step(cur);
        }
    }
    orbits / 2
}

/// The double cover whose total space is orientable: two copies of each
/// vertex (the second with the over/under relabeling of an inversion),
/// with a band of twist parity t joining copy ε to copy ε⊕t, untwisted.
pub fn orientation_double_cover(rd: &RibbonDiagram) -> RibbonDiagram {
    let rd = rd.normalized();
    let offset = rd.vertices.keys().max().copied().unwrap_or(0) + 1;
    let mut vertices = BTreeMap::new();
    for (&id, v) in &rd.vertices {
        vertices.insert(
            id,
            RibbonVertex { sign: v.sign, rotation: standard_rotation(v.sign), orientation: true },
        );
        vertices.insert(
            id + offset,
            RibbonVertex { sign: v.sign, rotation: standard_rotation(v.sign), orientation: true },
        );
    }
    let lift = |d: Dart, sheet: bool| -> Dart {
        if sheet {
            (d.0 + offset, d.1.swapped())
        } else {
            d
        }
    };
    let mut edges = Vec::new();
    for e in &rd.edges {
        for sheet in [false, true] {
            edges.push(RibbonEdge {
                ends: [lift(e.ends[0], sheet), lift(e.ends[1], sheet ^ e.twist)],
                twist: false,
            });
        }
    }
    let mut free_loops = Vec::new();
    for &twisted in &rd.free_loops {
        if twisted {
            free_loops.push(false); // connected double cover of a Möbius band
        } else {
            free_loops.push(false);
            free_loops.push(false);
        }
    }
    RibbonDiagram { vertices, edges, free_loops }
}

const ISO_LIMIT: usize = 16;

/// Exact isomorphism of ribbon diagrams: a vertex bijection together with
/// per-vertex inversions and an optional mirror per connected piece,
/// matching signs, dart attachments, and twist parities.
pub fn ribbon_isomorphic(a: &RibbonDiagram, b: &RibbonDiagram) -> Result<bool, RibbonError> {
    a.validate()?;
    b.validate()?;
    let n = a.vertices.len().max(b.vertices.len());
    if n > ISO_LIMIT {
        return Err(RibbonError::TooLarge(n, ISO_LIMIT));
    }
    if a.vertices.len() != b.vertices.len()
        || a.edges.len() != b.edges.len()
        || a.free_loops.len() != b.free_loops.len()
    {
        return Ok(false);
    }
    let mut la = a.free_loops.clone();
    let mut lb = b.free_loops.clone();
    la.sort_unstable();
    lb.sort_unstable();
    if la != lb {
        return Ok(false);
    }
    let a = a.normalized();
    let b = b.normalized();
    let pa = a.vertex_pieces();
    let pb = b.vertex_pieces();
    if pa.len() != pb.len() {
        return Ok(false);
    }
    let da = a.dart_edge_map();
    let db = b.dart_edge_map();
    // match pieces greedily with backtracking
    fn assign(
        a: &RibbonDiagram,
        b: &RibbonDiagram,
        da: &HashMap<Dart, (usize, usize)>,
        db: &HashMap<Dart, (usize, usize)>,
        pa: &[Vec<u32>],
        pb: &[Vec<u32>],
        used: &mut Vec<bool>,
        i: usize,
    ) -> bool {
        if i == pa.len() {
            return true;
        }
        for j in 0..pb.len() {
            if used[j] || pa[i].len() != pb[j].len() {
                continue;
            }
            if piece_isomorphic(a, b, da, db, &pa[i], &pb[j]) {
                used[j] = true;
                if assign(a, b, da, db, pa, pb, used, i + 1) {
                    return true;
                }
                used[j] = false;
            }
        }
        false
    }
    let mut used = vec![false; pb.len()];
    Ok(assign(&a, &b, &da, &db, &pa, &pb, &mut used, 0))
}

/// Try to match one connected piece onto another: choose the image of a
/// seed vertex, a mirror bit for the piece, and the seed's inversion bit;
/// everything else is forced by propagation along edges.
fn piece_isomorphic(
    a: &RibbonDiagram,
    b: &RibbonDiagram,
    da: &HashMap<Dart, (usize, usize)>,
    db: &HashMap<Dart, (usize, usize)>,
    ga: &[u32],
    gb: &[u32],
) -> bool {
    let seed = ga[0];
    for &target in gb {
        for mirror in [false, true] {
            for seed_flip in [false, true] {
                if try_match(a, b, da, db, ga, seed, target, mirror, seed_flip) {
                    return true;
                }
            }
        }
    }
    false
}

#[allow(clippy::too_many_arguments)]
fn try_match(
    a: &RibbonDiagram,
    b: &RibbonDiagram,
    da: &HashMap<Dart, (usize, usize)>,
    db: &HashMap<Dart, (usize, usize)>,
    ga: &[u32],
    seed: u32,
    target: u32,
    mirror: bool,
    seed_flip: bool,
) -> bool {
    let mut phi: HashMap<u32, u32> = HashMap::new();
    let mut flip: HashMap<u32, bool> = HashMap::new();
    let mut image_used: HashMap<u32, u32> = HashMap::new();
    phi.insert(seed, target);
    flip.insert(seed, seed_flip);
    image_used.insert(target, seed);
    let mut queue = VecDeque::from([seed]);
    while let Some(u) = queue.pop_front() {
        let pu = phi[&u];
        let fu = flip[&u];
        let want_sign = if mirror { -a.vertices[&u].sign } else { a.vertices[&u].sign };
        if b.vertices[&pu].sign != want_sign {
            return false;
        }
        for role in Role::ALL {
            let &(ei, side) = da.get(&(u, role)).expect("well-formed");
            let ea = &a.edges[ei];
            let (w, wrole) = ea.ends[1 - side];
            let mapped_role = if fu { role.swapped() } else { role };
            let Some(&(ej, jside)) = db.get(&(pu, mapped_role)) else {
                return false;
            };
            let eb = &b.edges[ej];
            let (pw, pwrole) = eb.ends[1 - jside];
            let fw = if pwrole == wrole {
                false
            } else if pwrole == wrole.swapped() {
                true
            } else {
                return false;
            };
            match phi.get(&w) {
                Some(&existing) => {
                    if existing != pw || flip[&w] != fw {
                        return false;
                    }
                }
                None => {
                    if image_used.contains_key(&pw) {
                        return false;
                    }
                    phi.insert(w, pw);
                    flip.insert(w, fw);
                    image_used.insert(pw, w);
                    queue.push_back(w);
                }
            }
            if ea.twist ^ fu ^ flip[&w] != eb.twist {
                return false;
            }
        }
    }
    phi.len() == ga.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::double_cover;

    fn parse(s: &str) -> TwistedCode {
        TwistedCode::parse(s).unwrap()
    }

    fn rd(s: &str) -> RibbonDiagram {
        let d = abstract_diagram(&parse(s));
        d.validate().unwrap();
        d
    }

    #[test]
    fn free_loop_bands() {
        let annulus = surface_invariants(&rd("()"));
        assert_eq!(annulus.pieces.len(), 1);
        assert!(annulus.orientable());
        assert_eq!(annulus.euler_characteristic(), 0);
        assert_eq!(annulus.boundary_components(), 2);

        let mobius = surface_invariants(&rd("(*)"));
        assert!(!mobius.orientable());
        assert_eq!(mobius.euler_characteristic(), 0);
        assert_eq!(mobius.boundary_components(), 1);
        assert_eq!(mobius.pieces[0].genus_or_crosscaps, 1);
    }

    #[test]
    fn kink_neighborhood() {
        let inv = surface_invariants(&rd("(O1+ U1+)"));
        assert_eq!(inv.pieces.len(), 1);
        assert!(inv.orientable());
        assert_eq!(inv.euler_characteristic(), -1);
        assert_eq!(inv.boundary_components(), 3);
        assert_eq!(inv.pieces[0].genus_or_crosscaps, 0);
    }

    #[test]
    fn kink_with_bar_neighborhood() {
        let inv = surface_invariants(&rd("(O1+ U1+ *)"));
        assert!(!inv.orientable());
        assert_eq!(inv.euler_characteristic(), -1);
        assert_eq!(inv.boundary_components(), 2);
        assert_eq!(inv.pieces[0].genus_or_crosscaps, 1);
    }

    #[test]
    fn trefoil_neighborhood() {
        let inv = surface_invariants(&rd("(O1+ U2+ O3+ U1+ O2+ U3+)"));
        assert!(inv.orientable());
        assert_eq!(inv.euler_characteristic(), -3);
        assert_eq!(inv.boundary_components(), 5);
        assert_eq!(inv.pieces[0].genus_or_crosscaps, 0);
    }

    #[test]
    fn virtual_trefoil_neighborhood() {
        // the band surface fills a torus: two boundary circles, genus 1
        let inv = surface_invariants(&rd("(O1+ O2+ U1+ U2+)"));
        assert!(inv.orientable());
        assert_eq!(inv.euler_characteristic(), -2);
        assert_eq!(inv.boundary_components(), 2);
        assert_eq!(inv.pieces[0].genus_or_crosscaps, 1);
    }

    #[test]
    fn barless_codes_are_orientable() {
        for s in ["(O1+ U1+)", "(O1+ O2+ U1+ U2+)", "(O1+ U2+ O3+ U1+ O2+ U3+)", "()"] {
            assert!(surface_invariants(&rd(s)).orientable(), "{s}");
        }
    }

    #[test]
    fn classification_identity_holds() {
        for s in ["(O1+ U1+ *)", "(O1- U1- * *)", "(O1+ O2+ U1+ U2+ *)", "(O1+ U2- O2- U1+)"] {
            for p in surface_invariants(&rd(s)).pieces {
                let chi = p.euler_characteristic;
                let b = p.boundary_components as i64;
                let g = p.genus_or_crosscaps as i64;
                if p.orientable {
                    assert_eq!(chi, 2 - 2 * g - b, "{s}");
                } else {
                    assert_eq!(chi, 2 - g - b, "{s}");
                }
            }
        }
    }

    #[test]
    fn cover_of_mobius_is_annulus() {
        let cov = orientation_double_cover(&rd("(*)"));
        let inv = surface_invariants(&cov);
        assert_eq!(inv.pieces.len(), 1);
        assert!(inv.orientable());
        assert_eq!(inv.euler_characteristic(), 0);
        assert_eq!(inv.boundary_components(), 2);
    }

    #[test]
    fn cover_of_annulus_is_two_annuli() {
        let cov = orientation_double_cover(&rd("()"));
        let inv = surface_invariants(&cov);
        assert_eq!(inv.pieces.len(), 2);
        assert!(inv.orientable());
        assert_eq!(inv.boundary_components(), 4);
    }

    #[test]
    fn cover_doubles_euler_and_is_orientable() {
        for s in ["(O1+ U1+)", "(O1+ U1+ *)", "(O1+ O2+ U1+ U2+ * *)", "(O1- U2+ O2+ U1- *)"] {
            let base = rd(s);
            let cov = orientation_double_cover(&base);
            cov.validate().unwrap();
            let inv = surface_invariants(&cov);
            assert!(inv.orientable(), "{s}");
            assert_eq!(
                inv.euler_characteristic(),
                2 * surface_invariants(&base).euler_characteristic(),
                "{s}"
            );
        }
    }

    #[test]
    fn trefoil_cover_is_two_trefoil_ribbons() {
        let cov = orientation_double_cover(&rd("(O1+ U2+ O3+ U1+ O2+ U3+)"));
        let two = rd("(O1+ U2+ O3+ U1+ O2+ U3+) (O4+ U5+ O6+ U4+ O5+ U6+)");
        assert!(ribbon_isomorphic(&cov, &two).unwrap());
    }

    #[test]
    fn isomorphism_basics() {
        let a = rd("(O1+ U1+ *)");
        assert!(ribbon_isomorphic(&a, &a).unwrap());
        assert!(!ribbon_isomorphic(&rd("(*)"), &rd("()")).unwrap());
        // sign pattern differs and no mirror fixes a mixed-sign pair
        assert!(!ribbon_isomorphic(&rd("(O1+ U1+)"), &rd("(O1- U1- *)")).unwrap());
    }

    #[test]
    fn inversion_gives_isomorphic_datum() {
        let base = rd("(O1+ U2+ O3+ U1+ O2+ U3+ * *)");
        // invert vertex 2 by hand: unset its bit, relabel its darts,
        // toggle twists of its incident edges
        let mut inv = base.clone();
        inv.vertices.get_mut(&2).unwrap().orientation = false;
        for e in &mut inv.edges {
            for d in &mut e.ends {
                if d.0 == 2 {
                    d.1 = d.1.swapped();
                    e.twist ^= true;
                }
            }
        }
        assert_eq!(inv.normalized(), base.normalized());
        assert!(ribbon_isomorphic(&base, &inv).unwrap());
    }

    #[test]
    fn marker_swapped_code_has_isomorphic_ribbon() {
        for s in ["(O1+ U1+)", "(O1+ O2+ U1+ U2+)", "(O1+ U2- O2- U1+ *)"] {
            let code = parse(s);
            assert!(ribbon_isomorphic(
                &abstract_diagram(&code),
                &abstract_diagram(&code.involution_s())
            )
            .unwrap());
        }
    }

    #[test]
    fn code_cover_matches_surface_cover() {
        for s in [
            "()",
            "(*)",
            "(O1+ U1+)",
            "(O1+ U1+ *)",
            "(O1+ O2+ U1+ U2+)",
            "(O1+ O2+ U1+ U2+ *)",
            "(O1+ U2+ O3+ U1+ O2+ U3+)",
            "(O1- U1- * O2+ U2+)",
            "(O1+ U2- O2- U1+ * *)",
        ] {
            let code = parse(s);
            let via_code = abstract_diagram(&double_cover(&code).cover);
            let via_surface = orientation_double_cover(&abstract_diagram(&code));
            assert!(ribbon_isomorphic(&via_code, &via_surface).unwrap(), "{s}");
        }
    }

    #[test]
    fn size_limit_is_enforced() {
        let mut comp = Vec::new();
        for id in 1..=17u32 {
            comp.push(Symbol::cross(id, Strand::Over, 1));
            comp.push(Symbol::cross(id, Strand::Under, 1));
        }
        let big = abstract_diagram(&TwistedCode::new(vec![comp]));
        assert!(matches!(ribbon_isomorphic(&big, &big), Err(RibbonError::TooLarge(17, _))));
    }

    #[test]
    fn json_round_trip() {
        let d = rd("(O1+ U2- O2- U1+ *)");
        let json = serde_json::to_string(&d).unwrap();
        let back: RibbonDiagram = serde_json::from_str(&json).unwrap();
        assert_eq!(back, d);
        back.validate().unwrap();
        let inv = surface_invariants(&d);
        let j2 = serde_json::to_string(&inv).unwrap();
        assert_eq!(serde_json::from_str::<SurfaceInvariants>(&j2).unwrap(), inv);
    }
}
