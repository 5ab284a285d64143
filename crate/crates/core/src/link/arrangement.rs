//! Exact arrangement of a link: vertices, sub-arcs, faces and the dual graph.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_traits::One;

use super::geom::{add, along, angular, cross, is_null, meet, neg, on_arc, orient, primitive, ray_of, scale, tangent, Meet, Ray};
use super::SphereLink;
use crate::arith::Q;
use crate::{GermError, Result};

/// A sub-arc of the link between two arrangement vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub ends: (usize, usize),
    pub circle: usize,
}

#[derive(Clone, Debug)]
pub struct Face {
    /// A point of the open face.
    pub rep: Ray,
    /// Link edges on the boundary, sorted.
    pub boundary: Vec<usize>,
}

/// A query location: a face index or a point given by a rational vector.
#[derive(Clone, Debug)]
pub enum Site {
    Face(usize),
    Point([Q; 3]),
}

#[derive(Clone)]
struct ArcSpec {
    a: Ray,
    b: Ray,
    circle: Option<usize>,
}

/// Planar graph refining the link by connector arcs, so that it is connected.
struct Fine {
    verts: Vec<Ray>,
    /// (tail, head, parent link edge)
    edges: Vec<(usize, usize, Option<usize>)>,
    /// Outgoing half-edges at each vertex in counter-clockwise order.
    rot: Vec<Vec<usize>>,
    /// True face of each half-edge (the face on its left).
    face_of: Vec<usize>,
}

impl Fine {
    fn tail(&self, h: usize) -> usize {
        let (a, b, _) = self.edges[h / 2];
        if h % 2 == 0 {
            a
        } else {
            b
        }
    }

    fn head(&self, h: usize) -> usize {
        self.tail(h ^ 1)
    }
}

pub struct Arrangement {
    pub vertices: Vec<Ray>,
    pub edges: Vec<Edge>,
    pub faces: Vec<Face>,
    /// Faces left and right of each link edge.
    pub edge_faces: Vec<(usize, usize)>,
    /// Connected components of the link.
    pub components: usize,
    pub circles: usize,
    fine: Fine,
    index: HashMap<Ray, usize>,
}

fn link_arcs(link: &SphereLink) -> Result<Vec<ArcSpec>> {
    let mut arcs = Vec::new();
    for (ci, c) in link.circles.iter().enumerate() {
        let rays: Vec<Ray> = c.iter().map(ray_of).collect();
        let n = rays.len();
        for i in 0..n {
            let (a, b) = (&rays[i], &rays[(i + 1) % n]);
            if is_null(&add(a, b)) {
                return Err(GermError::IllPosedArc(format!("circle {ci}, arc {i}")));
            }
            arcs.push(ArcSpec { a: a.clone(), b: b.clone(), circle: Some(ci) });
        }
    }
    let mut start = 0;
    let mut bounds = Vec::new();
    for c in &link.circles {
        bounds.push((start, c.len()));
        start += c.len();
    }
    for (ci, &(s, n)) in bounds.iter().enumerate() {
        for i in 0..n {
            for j in i + 1..n {
                let m = meet(&arcs[s + i].a, &arcs[s + i].b, &arcs[s + j].a, &arcs[s + j].b);
                let ok = if j == i + 1 {
                    m == Meet::Point(arcs[s + j].a.clone())
                } else if i == 0 && j == n - 1 {
                    m == Meet::Point(arcs[s].a.clone())
                } else {
                    m == Meet::Disjoint
                };
                if !ok {
                    return Err(GermError::InvalidLink(format!(
                        "circle {ci} is not simple: arcs {i} and {j} meet"
                    )));
                }
            }
        }
    }
    for (ci, &(s, n)) in bounds.iter().enumerate() {
        for (cj, &(t, m)) in bounds.iter().enumerate().skip(ci + 1) {
            for i in s..s + n {
                for j in t..t + m {
                    if meet(&arcs[i].a, &arcs[i].b, &arcs[j].a, &arcs[j].b) == Meet::Overlap {
                        return Err(GermError::NonFiniteIntersection(format!(
                            "circle {ci} arc {} and circle {cj} arc {}",
                            i - s,
                            j - t
                        )));
                    }
                }
            }
        }
    }
    Ok(arcs)
}

/// Vertices and sub-arcs cut out by a family of arcs.
fn subdivide(arcs: &[ArcSpec]) -> (Vec<Ray>, HashMap<Ray, usize>, Vec<(usize, usize, usize)>) {
    let mut verts = Vec::new();
    let mut index: HashMap<Ray, usize> = HashMap::new();
    let mut edges = Vec::new();
    for (i, arc) in arcs.iter().enumerate() {
        let mut pts = vec![arc.a.clone(), arc.b.clone()];
        for (j, other) in arcs.iter().enumerate() {
            if i != j {
                if let Meet::Point(p) = meet(&arc.a, &arc.b, &other.a, &other.b) {
                    pts.push(p);
                }
            }
        }
        let n = cross(&arc.a, &arc.b);
        pts.sort_by(|p, q| along(&n, p, q));
        pts.dedup();
        let ids: Vec<usize> = pts
            .into_iter()
            .map(|p| {
                *index.entry(p.clone()).or_insert_with(|| {
                    verts.push(p);
                    verts.len() - 1
                })
            })
            .collect();
        for w in ids.windows(2) {
            edges.push((w[0], w[1], i));
        }
    }
    (verts, index, edges)
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra.max(rb)] = ra.min(rb);
    }
}

/// Direction into the open corner counter-clockwise after `ti` at `v`.
fn corner_direction(v: &Ray, ti: &Ray, tj: &Ray, single: bool) -> Ray {
    if single {
        return cross(v, ti);
    }
    match orient(ti, tj, v) {
        1 => add(ti, tj),
        0 => cross(v, ti),
        _ => neg(&add(ti, tj)),
    }
}

impl Arrangement {
    fn fine_edges_meeting(&self, a: &Ray, b: &Ray) -> Option<Vec<(Ray, usize)>> {
        let mut hits = Vec::new();
        for (k, &(x, y, _)) in self.fine.edges.iter().enumerate() {
            match meet(a, b, &self.fine.verts[x], &self.fine.verts[y]) {
                Meet::Disjoint => {}
                Meet::Overlap => return None,
                Meet::Point(q) => hits.push((q, k)),
            }
        }
        Some(hits)
    }

    /// A point of the open corner left of fine half-edge `h`, close to its tail.
    fn corner_point(&self, h: usize) -> Result<Ray> {
        let f = &self.fine;
        let v = f.tail(h);
        let vr = &f.verts[v];
        let rot = &f.rot[v];
        let pos = rot.iter().position(|&g| g == h).expect("half-edge in rotation");
        let hn = rot[(pos + 1) % rot.len()];
        let ti = tangent(vr, &f.verts[f.head(h)]);
        let tj = tangent(vr, &f.verts[f.head(hn)]);
        let d = corner_direction(vr, &ti, &tj, rot.len() == 1);
        let mut k = BigInt::one();
        for _ in 0..256 {
            k <<= 1;
            let p = primitive(add(&scale(vr, &k), &d));
            if let Some(hits) = self.fine_edges_meeting(vr, &p) {
                if hits.iter().all(|(q, _)| q == vr) {
                    return Ok(p);
                }
            }
        }
        Err(GermError::Internal("no interior point found for a face".into()))
    }

    /// Face containing the point `p`.
    pub fn locate_ray(&self, p: &Ray) -> Result<usize> {
        let f = &self.fine;
        for &(x, y, parent) in &f.edges {
            if parent.is_some() && on_arc(p, &f.verts[x], &f.verts[y]) {
                return Err(GermError::NotGeneric(format!("{p:?} lies on the link")));
            }
        }
        for (k, &(x, y, _)) in f.edges.iter().enumerate() {
            if on_arc(p, &f.verts[x], &f.verts[y]) {
                return Ok(f.face_of[2 * k]);
            }
        }
        let np = neg(p);
        'start: for (v, vr) in f.verts.iter().enumerate() {
            if *vr == *p || *vr == np {
                continue;
            }
            let Some(hits) = self.fine_edges_meeting(vr, p) else { continue };
            let mut crossings = Vec::new();
            for (q, k) in hits {
                if q == *vr {
                    continue;
                }
                if self.index_fine(&q).is_some() {
                    continue 'start;
                }
                crossings.push((q, k));
            }
            if crossings.is_empty() {
                let tp = tangent(vr, p);
                let rot = &f.rot[v];
                let ts: Vec<Ray> = rot.iter().map(|&h| tangent(vr, &f.verts[f.head(h)])).collect();
                for i in 0..rot.len() {
                    let j = (i + 1) % rot.len();
                    let inside = rot.len() == 1
                        || angular(vr, &ts[i], &tp, &ts[j]) == std::cmp::Ordering::Less;
                    if inside && angular(vr, &ts[i], &ts[i], &tp) == std::cmp::Ordering::Less {
                        return Ok(f.face_of[rot[i]]);
                    }
                }
                continue;
            }
            let n = cross(vr, p);
            let (_, k) = crossings
                .into_iter()
                .max_by(|(q1, _), (q2, _)| along(&n, q1, q2))
                .expect("nonempty");
            let (x, y, _) = f.edges[k];
            let h = if orient(&f.verts[x], &f.verts[y], p) > 0 { 2 * k } else { 2 * k + 1 };
            return Ok(f.face_of[h]);
        }
        Err(GermError::NotGeneric(format!("no clean approach to {p:?}")))
    }

    fn index_fine(&self, q: &Ray) -> Option<usize> {
        self.fine.verts.iter().position(|v| v == q)
    }

    pub fn locate(&self, site: &Site) -> Result<usize> {
        match site {
            Site::Face(i) if *i < self.faces.len() => Ok(*i),
            Site::Face(i) => Err(GermError::NotGeneric(format!("no face {i}"))),
            Site::Point(p) => {
                let r = ray_of(p);
                if is_null(&r) {
                    return Err(GermError::NotGeneric("zero vector".into()));
                }
                self.locate_ray(&r)
            }
        }
    }

    pub fn vertex_index(&self, v: &Ray) -> Option<usize> {
        self.index.get(v).copied()
    }

    /// Breadth-first crossing counts from face `s`.
    pub fn distances_from(&self, s: usize) -> Vec<usize> {
        let mut adj = vec![Vec::new(); self.faces.len()];
        for &(l, r) in &self.edge_faces {
            adj[l].push(r);
            adj[r].push(l);
        }
        let mut dist = vec![usize::MAX; self.faces.len()];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// `(V, E, F)` of the link stratification.
    pub fn euler_counts(&self) -> (usize, usize, usize) {
        (self.vertices.len(), self.edges.len(), self.faces.len())
    }

    pub fn link_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for e in &self.edges {
            deg[e.ends.0] += 1;
            deg[e.ends.1] += 1;
        }
        deg
    }
}

pub fn build_arrangement(link: &SphereLink) -> Result<Arrangement> {
    let arcs = link_arcs(link)?;
    let (vertices, index, raw) = subdivide(&arcs);
    let edges: Vec<Edge> = raw
        .iter()
        .map(|&(a, b, i)| Edge { ends: (a, b), circle: arcs[i].circle.expect("link arc") })
        .collect();
    let mut parent: Vec<usize> = (0..vertices.len()).collect();
    for e in &edges {
        union(&mut parent, e.ends.0, e.ends.1);
    }
    let components = (0..vertices.len()).filter(|&v| find(&mut parent, v) == v).count();

    // connect the components by auxiliary arcs
    let mut all = arcs.clone();
    let (mut fverts, _, mut fraw) = subdivide(&all);
    loop {
        let mut parent: Vec<usize> = (0..fverts.len()).collect();
        for &(a, b, _) in &fraw {
            union(&mut parent, a, b);
        }
        let root = find(&mut parent, 0);
        let outside: Vec<usize> = (0..fverts.len()).filter(|&v| find(&mut parent, v) != root).collect();
        if outside.is_empty() {
            break;
        }
        let inside: Vec<usize> = (0..fverts.len()).filter(|&v| find(&mut parent, v) == root).collect();
        let mut chosen = None;
        'search: for &u in &inside {
            for &w in &outside {
                let (a, b) = (&fverts[u], &fverts[w]);
                if is_null(&add(a, b)) {
                    continue;
                }
                if all.iter().any(|s| meet(a, b, &s.a, &s.b) == Meet::Overlap) {
                    continue;
                }
                chosen = Some(ArcSpec { a: a.clone(), b: b.clone(), circle: None });
                break 'search;
            }
        }
        let arc = chosen.ok_or_else(|| GermError::Internal("cannot connect link components".into()))?;
        all.push(arc);
        (fverts, _, fraw) = subdivide(&all);
    }

    // each fine edge lies in exactly one link edge or in no link edge
    let fedges: Vec<(usize, usize, Option<usize>)> = fraw
        .iter()
        .map(|&(a, b, i)| {
            let parent = arcs.get(i).map(|_| {
                raw.iter()
                    .position(|&(x, y, j)| {
                        j == i && on_arc(&fverts[a], &vertices[x], &vertices[y]) && on_arc(&fverts[b], &vertices[x], &vertices[y])
                    })
                    .expect("fine edge inside a link edge")
            });
            (a, b, parent)
        })
        .collect();

    let mut rot: Vec<Vec<usize>> = vec![Vec::new(); fverts.len()];
    for (k, &(a, b, _)) in fedges.iter().enumerate() {
        rot[a].push(2 * k);
        rot[b].push(2 * k + 1);
    }
    let mut fine = Fine { verts: fverts, edges: fedges, rot: Vec::new(), face_of: Vec::new() };
    for (v, hs) in rot.iter_mut().enumerate() {
        let vr = &fine.verts[v];
        let ts: Vec<(usize, Ray)> = hs.iter().map(|&h| (h, tangent(vr, &fine.verts[fine.head(h)]))).collect();
        let r = ts[0].1.clone();
        let mut ts = ts;
        ts.sort_by(|s, t| angular(vr, &r, &s.1, &t.1));
        *hs = ts.into_iter().map(|(h, _)| h).collect();
    }
    fine.rot = rot;

    // orbits of next(u->v) = v->w, w clockwise before u at v
    let nh = 2 * fine.edges.len();
    let mut pos = vec![0; nh];
    for hs in &fine.rot {
        for (i, &h) in hs.iter().enumerate() {
            pos[h] = i;
        }
    }
    let mut orbit = vec![usize::MAX; nh];
    let mut orbits = 0;
    for h0 in 0..nh {
        if orbit[h0] != usize::MAX {
            continue;
        }
        let mut h = h0;
        while orbit[h] == usize::MAX {
            orbit[h] = orbits;
            let t = h ^ 1;
            let hs = &fine.rot[fine.tail(t)];
            h = hs[(pos[t] + hs.len() - 1) % hs.len()];
        }
        orbits += 1;
    }
    if fine.verts.len() + orbits != fine.edges.len() + 2 {
        return Err(GermError::Internal("Euler formula fails on the refined graph".into()));
    }

    // faces of the link: orbits glued across connector edges
    let mut parent: Vec<usize> = (0..orbits).collect();
    for (k, e) in fine.edges.iter().enumerate() {
        if e.2.is_none() {
            union(&mut parent, orbit[2 * k], orbit[2 * k + 1]);
        }
    }
    let mut face_id = vec![usize::MAX; orbits];
    let mut nfaces = 0;
    for h in 0..nh {
        let r = find(&mut parent, orbit[h]);
        if face_id[r] == usize::MAX {
            face_id[r] = nfaces;
            nfaces += 1;
        }
    }
    fine.face_of = (0..nh).map(|h| face_id[find(&mut parent, orbit[h])]).collect();

    let mut edge_faces = vec![(usize::MAX, usize::MAX); edges.len()];
    // fine edges run in the direction of their link edge
    for (k, &(_, _, p)) in fine.edges.iter().enumerate() {
        if let Some(p) = p {
            edge_faces[p] = (fine.face_of[2 * k], fine.face_of[2 * k + 1]);
        }
    }
    let mut boundary = vec![Vec::new(); nfaces];
    for (k, &(l, r)) in edge_faces.iter().enumerate() {
        boundary[l].push(k);
        if r != l {
            boundary[r].push(k);
        }
    }

    let mut arr = Arrangement {
        vertices,
        edges,
        faces: Vec::new(),
        edge_faces,
        components,
        circles: link.circles.len(),
        fine,
        index,
    };
    let mut first = vec![usize::MAX; nfaces];
    for h in 0..nh {
        let fc = arr.fine.face_of[h];
        if first[fc] == usize::MAX {
            first[fc] = h;
        }
    }
    let mut faces = Vec::with_capacity(nfaces);
    for (fc, b) in boundary.into_iter().enumerate() {
        let rep = arr.corner_point(first[fc])?;
        faces.push(Face { rep, boundary: b });
    }
    arr.faces = faces;
    let (v, e, f) = arr.euler_counts();
    if v + f != e + 1 + components {
        return Err(GermError::Internal(format!(
            "Euler formula fails: V={v} E={e} F={f} components={components}"
        )));
    }
    Ok(arr)
}

/// Every vertex of the link has an even number of incident link edges.
pub fn is_euler_cycle(arr: &Arrangement) -> bool {
    arr.link_degrees().iter().all(|d| d % 2 == 0)
}

pub fn crossing_distance(arr: &Arrangement, lambda: &Site, mu: &Site) -> Result<usize> {
    let a = arr.locate(lambda)?;
    let b = arr.locate(mu)?;
    Ok(arr.distances_from(a)[b])
}

/// Largest crossing distance, with a pair of faces attaining it.
pub fn diameter(arr: &Arrangement) -> (usize, (usize, usize)) {
    let mut best = (0, (0, 0));
    for s in 0..arr.faces.len() {
        for (t, &d) in arr.distances_from(s).iter().enumerate() {
            if d > best.0 {
                best = (d, (s, t));
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::link::fixtures;

    fn pt(x: i64, y: i64, z: i64) -> Site {
        Site::Point([Q::from_integer(x.into()), Q::from_integer(y.into()), Q::from_integer(z.into())])
    }

    #[test]
    fn one_great_circle() {
        let arr = build_arrangement(&fixtures::load("one_great_circle")).unwrap();
        assert_eq!(arr.euler_counts(), (4, 4, 2));
        assert!(is_euler_cycle(&arr));
        assert_eq!(crossing_distance(&arr, &pt(0, 0, 1), &pt(0, 0, -1)).unwrap(), 1);
        assert_eq!(crossing_distance(&arr, &pt(0, 0, 1), &pt(1, 2, 3)).unwrap(), 0);
        assert_eq!(diameter(&arr).0, 1);
        assert!(matches!(arr.locate(&pt(1, 1, 0)), Err(GermError::NotGeneric(_))));
        assert!(matches!(arr.locate(&pt(1, 0, 0)), Err(GermError::NotGeneric(_))));
    }

    #[test]
    fn two_orthogonal() {
        let arr = build_arrangement(&fixtures::load("two_orthogonal")).unwrap();
        let (v, e, f) = arr.euler_counts();
        assert_eq!((v, e, f), (6, 8, 4));
        assert!(is_euler_cycle(&arr));
        assert_eq!(diameter(&arr).0, 2);
        assert_eq!(crossing_distance(&arr, &pt(1, 1, 1), &pt(-1, 1, -1)).unwrap(), 2);
        assert_eq!(crossing_distance(&arr, &pt(1, 1, 1), &pt(-1, 1, 1)).unwrap(), 1);
    }

    #[test]
    fn cone_and_nested() {
        let arr = build_arrangement(&fixtures::load("cone")).unwrap();
        assert_eq!(arr.faces.len(), 3);
        assert_eq!(arr.components, 2);
        assert_eq!(crossing_distance(&arr, &pt(0, 0, 1), &pt(0, 0, -1)).unwrap(), 2);
        assert_eq!(diameter(&arr).0, 2);
        let arr = build_arrangement(&fixtures::load("nested_four")).unwrap();
        assert_eq!(arr.faces.len(), 5);
        assert_eq!(diameter(&arr).0, 4);
        let arr = build_arrangement(&fixtures::load("crossed_cones")).unwrap();
        assert_eq!(arr.faces.len(), 5);
        assert_eq!(diameter(&arr).0, 2);
    }

    #[test]
    fn representatives_lie_in_their_faces() {
        for name in ["one_great_circle", "two_orthogonal", "cone", "nested_four", "crossed_cones"] {
            let arr = build_arrangement(&fixtures::load(name)).unwrap();
            for (i, f) in arr.faces.iter().enumerate() {
                assert_eq!(arr.locate_ray(&f.rep).unwrap(), i, "{name} face {i}");
            }
        }
    }

    #[test]
    fn rejects_bad_links() {
        let q = |a: i64, b: i64| Q::new(a.into(), b.into());
        let sq = |z: &Q, r: &Q| -> Vec<[Q; 3]> {
            vec![
                [r.clone(), Q::from_integer(0.into()), z.clone()],
                [Q::from_integer(0.into()), r.clone(), z.clone()],
                [-r.clone(), Q::from_integer(0.into()), z.clone()],
                [Q::from_integer(0.into()), -r.clone(), z.clone()],
            ]
        };
        let c = sq(&q(3, 5), &q(4, 5));
        let link = SphereLink::new(vec![c.clone(), c]).unwrap();
        assert!(matches!(build_arrangement(&link), Err(GermError::NonFiniteIntersection(_))));
        let one = |x: i64, y: i64, z: i64| [q(x, 1), q(y, 1), q(z, 1)];
        let link = SphereLink::new(vec![vec![one(1, 0, 0), one(-1, 0, 0), one(0, 1, 0)]]).unwrap();
        assert!(matches!(build_arrangement(&link), Err(GermError::IllPosedArc(_))));
        let bow = vec![one(1, 0, 0), one(0, 1, 0), one(0, 0, 1), one(0, -1, 0)];
        let bow = vec![bow[0].clone(), bow[2].clone(), bow[1].clone(), [q(0, 1), q(3, 5), q(4, 5)]];
        assert!(matches!(build_arrangement(&SphereLink::new(vec![bow]).unwrap()), Err(GermError::InvalidLink(_))));
    }

    #[test]
    fn negation_is_exact() {
        for name in ["one_great_circle", "two_orthogonal", "cone", "nested_four", "crossed_cones"] {
            let link = fixtures::load(name);
            let a = build_arrangement(&link).unwrap();
            let b = build_arrangement(&link.negate()).unwrap();
            let nv: Vec<Ray> = a.vertices.iter().map(neg).collect();
            assert_eq!(nv, b.vertices);
            assert_eq!(a.edges, b.edges);
            assert_eq!(a.euler_counts(), b.euler_counts());
        }
    }
}
