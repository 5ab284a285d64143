//! The antipodal map on an arrangement and the parity of antipodal distances.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use super::arrangement::{Arrangement, Site};
use super::geom::{add, cross, meet, neg, on_arc, primitive, ray_of, scale, Meet, Ray};
use crate::{GermError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CirclePairing {
    Fixed(usize),
    Swapped(usize, usize),
}

/// Images of vertices, edges, faces and circles under `v -> -v`.
#[derive(Clone, Debug, Serialize)]
pub struct AntipodalCorrespondence {
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<usize>,
    pub face_map: Vec<usize>,
    /// `None` when the link is invariant but its circles are not permuted.
    pub circles: Option<Vec<CirclePairing>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ParityReport {
    pub parity: usize,
    pub distance: usize,
    pub faces: (usize, usize),
    pub meridian_crossings: usize,
    /// Index of the azimuth used for the meridian count.
    pub azimuth: usize,
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

pub fn antipodal_check(arr: &Arrangement) -> Option<AntipodalCorrespondence> {
    let vertex_map = arr
        .vertices
        .iter()
        .map(|v| arr.vertex_index(&neg(v)))
        .collect::<Option<Vec<_>>>()?;
    let by_ends: HashMap<(usize, usize), usize> =
        arr.edges.iter().enumerate().map(|(k, e)| (key(e.ends.0, e.ends.1), k)).collect();
    let edge_map = arr
        .edges
        .iter()
        .map(|e| by_ends.get(&key(vertex_map[e.ends.0], vertex_map[e.ends.1])).copied())
        .collect::<Option<Vec<_>>>()?;
    let face_map = arr
        .faces
        .iter()
        .map(|f| arr.locate_ray(&neg(&f.rep)).ok())
        .collect::<Option<Vec<_>>>()?;

    let mut sets: Vec<Vec<usize>> = vec![Vec::new(); arr.circles];
    for (k, e) in arr.edges.iter().enumerate() {
        sets[e.circle].push(k);
    }
    let images: Vec<Option<usize>> = sets
        .iter()
        .map(|s| {
            let mut img: Vec<usize> = s.iter().map(|&k| edge_map[k]).collect();
            img.sort_unstable();
            sets.iter().position(|t| *t == img)
        })
        .collect();
    let circles = images.iter().all(Option::is_some).then(|| {
        images
            .iter()
            .enumerate()
            .filter_map(|(i, j)| match j.expect("checked") {
                j if j == i => Some(CirclePairing::Fixed(i)),
                j if j > i => Some(CirclePairing::Swapped(i, j)),
                _ => None,
            })
            .collect()
    });
    Some(AntipodalCorrespondence { vertex_map, edge_map, face_map, circles })
}

fn azimuths() -> impl Iterator<Item = (BigInt, BigInt)> {
    (0..64i64).map(|k| {
        let p = 2 * k - 63;
        (BigInt::from(256 - p * p), BigInt::from(32 * p))
    })
}

/// Crossings of the half meridian from `l` to `-l` through `w`, or `None`
/// when it meets a vertex of the link.
fn meridian_count(arr: &Arrangement, l: &Ray, w: &Ray) -> Option<usize> {
    let nl = neg(l);
    let mut count = 0;
    for v in &arr.vertices {
        if on_arc(v, l, w) || on_arc(v, w, &nl) {
            return None;
        }
    }
    for e in &arr.edges {
        let (a, b) = (&arr.vertices[e.ends.0], &arr.vertices[e.ends.1]);
        if on_arc(w, a, b) {
            return None;
        }
        for (s, t) in [(l, w), (w, &nl)] {
            match meet(s, t, a, b) {
                Meet::Disjoint => {}
                Meet::Point(_) => count += 1,
                Meet::Overlap => return None,
            }
        }
    }
    Some(count)
}

/// `d(lambda, -lambda) mod 2`, checked against a direct meridian count.
pub fn antipodal_parity(arr: &Arrangement, lambda: &Site) -> Result<ParityReport> {
    let l = match lambda {
        Site::Face(i) => arr
            .faces
            .get(*i)
            .ok_or_else(|| GermError::NotGeneric(format!("no face {i}")))?
            .rep
            .clone(),
        Site::Point(p) => ray_of(p),
    };
    let fa = arr.locate_ray(&l)?;
    let fb = arr.locate_ray(&neg(&l))?;
    let distance = arr.distances_from(fa)[fb];

    let axis = (0..3).min_by_key(|&i| l[i].abs()).expect("three coordinates");
    let mut e = [BigInt::from(0), BigInt::from(0), BigInt::from(0)];
    e[axis] = BigInt::from(1);
    let u = primitive(cross(&l, &e));
    let v = primitive(cross(&l, &u));
    for (i, (a, b)) in azimuths().enumerate() {
        let w = primitive(add(&scale(&u, &a), &scale(&v, &b)));
        if let Some(c) = meridian_count(arr, &l, &w) {
            if c % 2 != distance % 2 {
                return Err(GermError::Internal(format!(
                    "meridian count {c} and crossing distance {distance} differ in parity"
                )));
            }
            return Ok(ParityReport {
                parity: distance % 2,
                distance,
                faces: (fa, fb),
                meridian_crossings: c,
                azimuth: i,
            });
        }
    }
    Err(GermError::RegenerateLambda)
}

/// For every face `F`, the triple `(F, a(F), d(F, a(F)))`.
pub fn face_parities(arr: &Arrangement) -> Result<Vec<(usize, usize, usize)>> {
    (0..arr.faces.len())
        .map(|i| {
            let j = arr.locate_ray(&neg(&arr.faces[i].rep))?;
            Ok((i, j, arr.distances_from(i)[j]))
        })
        .collect()
}
