//! Random hexagon experiments: how `mdr` of the nine-line arrangement
//! depends on whether the six vertices lie on a conic.
//!
//! Each sample draws from its own ChaCha stream, keyed by the seed and the
//! sample index, so a dataset is reproducible and independent of thread
//! scheduling.

use std::io;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::geometry::ProjPoint;
use crate::hexagon::{Hexagon, HexagonError, PascalOutcome};
use crate::linalg::{rat, RatMatrix, Rational};
use crate::syzygy;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    OnConic,
    OffConic,
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sample {
    pub index: u64,
    /// Whether the generator aimed for six points on a conic.
    pub drawn_on_conic: bool,
    pub vertices: Vec<ProjPoint>,
    /// `ok` or a reason code for a rejected sample.
    pub status: String,
    pub on_conic: Option<bool>,
    pub pascal_collinear: Option<bool>,
    pub tangent_rank: Option<usize>,
    pub mdr: Option<u32>,
    /// `dim D_0(f)_4`.
    pub d0_4: Option<usize>,
}

impl Sample {
    pub fn is_generic(&self) -> bool {
        self.status == "ok"
    }
}

/// A random invertible integer matrix with entries in `[-bound, bound]`.
pub fn random_transform(rng: &mut impl Rng, bound: i64) -> [[Rational; 3]; 3] {
    loop {
        let m: [[Rational; 3]; 3] =
            std::array::from_fn(|_| std::array::from_fn(|_| rat(rng.gen_range(-bound..=bound))));
        let rows = m.iter().map(|r| r.to_vec()).collect();
        if RatMatrix::from_rows(3, rows).expect("3x3").rank() == 3 {
            return m;
        }
    }
}

/// Six distinct points of `x^2 = yz` with parameters `p/q`, moved by a random
/// projective transformation, in random order.
pub fn random_conic_points(rng: &mut impl Rng) -> Vec<ProjPoint> {
    let mut params: Vec<(i64, i64)> = Vec::new();
    while params.len() < 6 {
        let q = rng.gen_range(1..=3);
        let p = rng.gen_range(-9..=9);
        // distinct parameters p/q
        if params.iter().all(|&(a, b)| a * q != p * b) {
            params.push((p, q));
        }
    }
    let m = random_transform(rng, 3);
    let mut pts: Vec<ProjPoint> = params
        .iter()
        .map(|&(p, q)| {
            ProjPoint::from_ints(p * q, p * p, q * q)
                .and_then(|pt| pt.transform(&m))
                .expect("invertible image of a nonzero point")
        })
        .collect();
    pts.shuffle(rng);
    pts
}

/// Six random points with small integer coordinates.
pub fn random_points(rng: &mut impl Rng) -> Vec<ProjPoint> {
    (0..6)
        .map(|_| loop {
            let c: [i64; 3] = [
                rng.gen_range(-9..=9),
                rng.gen_range(-9..=9),
                rng.gen_range(1..=3),
            ];
            if let Some(p) = ProjPoint::from_ints(c[0], c[1], c[2]) {
                break p;
            }
        })
        .collect()
}

fn reason(e: &HexagonError) -> &'static str {
    match e {
        HexagonError::CoincidentVertices(..) => "coincident-vertices",
        HexagonError::CollinearConsecutive(..) => "collinear-vertices",
        HexagonError::CoincidentLines => "coincident-lines",
        HexagonError::NonGeneric(_) => "non-generic-lattice",
        _ => "degenerate",
    }
}

pub fn run_sample(seed: u64, index: u64, mode: SearchMode) -> Sample {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let drawn_on_conic = match mode {
        SearchMode::OnConic => true,
        SearchMode::OffConic => false,
        SearchMode::Mixed => rng.gen_bool(0.5),
    };
    let vertices = if drawn_on_conic {
        random_conic_points(&mut rng)
    } else {
        random_points(&mut rng)
    };
    let mut s = Sample {
        index,
        drawn_on_conic,
        vertices: vertices.clone(),
        status: "ok".into(),
        on_conic: None,
        pascal_collinear: None,
        tangent_rank: None,
        mdr: None,
        d0_4: None,
    };
    let v: [ProjPoint; 6] = vertices.try_into().expect("six points");
    let built = Hexagon::new(v).and_then(|h| h.build_arrangement().map(|a| (h, a)));
    let (h, a) = match built {
        Ok(x) => x,
        Err(e) => {
            s.status = reason(&e).into();
            return s;
        }
    };
    s.on_conic = Some(h.on_conic().is_some());
    s.pascal_collinear = match h.pascal_line() {
        Ok(PascalOutcome::Line(_)) => Some(true),
        Ok(PascalOutcome::NonCollinear) => Some(false),
        Err(_) => None,
    };
    s.tangent_rank = h.tangent_system().ok().map(|t| t.rank);
    let f = a.polynomial();
    s.d0_4 = Some(syzygy::syzygy_dim(&f, 4));
    s.mdr = Some(syzygy::mdr(&f));
    s
}

/// Samples `0..count`, in index order.
pub fn run(count: u64, mode: SearchMode, seed: u64) -> Vec<Sample> {
    (0..count)
        .into_par_iter()
        .map(|i| run_sample(seed, i, mode))
        .collect()
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or(String::new(), ToString::to_string)
}

pub fn write_csv<W: io::Write>(samples: &[Sample], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "index",
        "drawn_on_conic",
        "status",
        "v1",
        "v2",
        "v3",
        "v4",
        "v5",
        "v6",
        "on_conic",
        "pascal_collinear",
        "tangent_rank",
        "mdr",
        "dim_d0_4",
    ])?;
    for s in samples {
        let mut rec = vec![
            s.index.to_string(),
            s.drawn_on_conic.to_string(),
            s.status.clone(),
        ];
        rec.extend(s.vertices.iter().map(ToString::to_string));
        rec.extend([
            opt(&s.on_conic),
            opt(&s.pascal_collinear),
            opt(&s.tangent_rank),
            opt(&s.mdr),
            opt(&s.d0_4),
        ]);
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub samples: usize,
    pub rejected: usize,
    pub on_conic_mdr5: usize,
    pub on_conic_other: usize,
    pub off_conic_mdr6: usize,
    /// Off-conic generic samples with `mdr = 5`: worth a closer look.
    pub off_conic_mdr5: Vec<u64>,
    pub off_conic_other: usize,
}

pub fn summarize(samples: &[Sample]) -> Summary {
    let mut s = Summary {
        samples: samples.len(),
        ..Summary::default()
    };
    for x in samples {
        match (x.on_conic, x.mdr) {
            (Some(true), Some(5)) => s.on_conic_mdr5 += 1,
            (Some(true), Some(_)) => s.on_conic_other += 1,
            (Some(false), Some(6)) => s.off_conic_mdr6 += 1,
            (Some(false), Some(5)) => s.off_conic_mdr5.push(x.index),
            (Some(false), Some(_)) => s.off_conic_other += 1,
            _ => s.rejected += 1,
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_csv() {
        let a = run(6, SearchMode::Mixed, 11);
        let b = run(6, SearchMode::Mixed, 11);
        let mut ca = Vec::new();
        let mut cb = Vec::new();
        write_csv(&a, &mut ca).unwrap();
        write_csv(&b, &mut cb).unwrap();
        assert_eq!(ca, cb);
        assert_eq!(String::from_utf8(ca).unwrap().lines().count(), 7);
    }

    #[test]
    fn conic_points_lie_on_a_conic() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let p: [ProjPoint; 6] = random_conic_points(&mut rng).try_into().unwrap();
            assert!(crate::hexagon::six_points_on_conic(&p).is_some());
        }
    }

    #[test]
    fn on_conic_samples_have_mdr_five() {
        for s in run(4, SearchMode::OnConic, 5) {
            if s.is_generic() {
                assert_eq!(s.mdr, Some(5));
                assert_eq!(s.tangent_rank, Some(2));
                assert_eq!(s.pascal_collinear, Some(true));
            }
        }
    }
}
