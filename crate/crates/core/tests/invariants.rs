use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ziegler::arrangement::total_tjurina;
use ziegler::builtins::Builtin;
use ziegler::hexagon::{Hexagon, HexagonError, PascalOutcome};
use ziegler::poly::graded_dim;
use ziegler::report::{analyze, compare, AnalysisReport, Comparison, Subject};
use ziegler::search::{random_conic_points, random_points, random_transform};
use ziegler::singular::{
    condition_matrix, congruent_mod_jacobian, gap_certificate, jacobian_piece,
};
use ziegler::syzygy::{apply, syzygy_space};
use ziegler::{lattice_isomorphic, mdr, Arrangement, LinearForm, ProjPoint, RatMatrix, Rational};

fn random_arrangement(rng: &mut impl Rng, n: usize) -> Arrangement {
    let mut lines: Vec<LinearForm> = Vec::new();
    while lines.len() < n {
        let c: [i64; 3] = std::array::from_fn(|_| rng.gen_range(-3..=3));
        if let Some(l) = LinearForm::from_ints(c[0], c[1], c[2]) {
            if !lines.contains(&l) {
                lines.push(l);
            }
        }
    }
    Arrangement::new(lines).unwrap()
}

fn binom2(n: usize) -> usize {
    n * (n - 1) / 2
}

fn corpus() -> Vec<Arrangement> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut out: Vec<Arrangement> = Builtin::ALL.iter().map(|b| b.arrangement()).collect();
    out.extend((0..8).map(|i| random_arrangement(&mut rng, 4 + i % 5)));
    out
}

#[test]
fn every_pair_of_lines_meets_once() {
    for a in corpus() {
        let l = a.lattice();
        let pairs: usize = l.points.iter().map(|p| binom2(p.multiplicity)).sum();
        assert_eq!(pairs, binom2(a.len()));
    }
}

#[test]
fn isomorphism_is_an_equivalence_on_the_corpus() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut all = corpus();
    // relabelled and transformed copies
    for a in corpus().into_iter().take(4) {
        let m = random_transform(&mut rng, 3);
        let mut moved = a.substitute(&m).unwrap().lines().to_vec();
        moved.reverse();
        all.push(Arrangement::new(moved).unwrap());
    }
    let lats: Vec<_> = all.iter().map(|a| a.lattice()).collect();
    let iso = |i: usize, j: usize| lattice_isomorphic(&lats[i], &lats[j]).is_some();
    for i in 0..lats.len() {
        assert!(iso(i, i));
        for j in 0..lats.len() {
            assert_eq!(iso(i, j), iso(j, i));
            if iso(i, j) {
                assert_eq!(lats[i].multiplicity_counts(), lats[j].multiplicity_counts());
                assert_eq!(lats[i].total_tjurina(), lats[j].total_tjurina());
                for k in 0..lats.len() {
                    if iso(j, k) {
                        assert!(iso(i, k));
                    }
                }
            }
        }
    }
}

#[test]
fn witness_maps_points_to_points() {
    let a = Builtin::Az.arrangement();
    let b = Builtin::Ad.arrangement();
    let (la, lb) = (a.lattice(), b.lattice());
    let w = lattice_isomorphic(&la, &lb).unwrap();
    for p in &la.points {
        let mut image: Vec<usize> = p.lines.iter().map(|&i| w[i]).collect();
        image.sort();
        assert!(lb.points.iter().any(|q| q.lines == image));
    }
}

#[test]
fn lattice_tau_and_mdr_survive_coordinate_changes() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for b in [Builtin::Az, Builtin::Ad] {
        let a = b.arrangement();
        let r = mdr(&a.polynomial());
        for _ in 0..2 {
            let moved = a.substitute(&random_transform(&mut rng, 2)).unwrap();
            assert!(lattice_isomorphic(&a.lattice(), &moved.lattice()).is_some());
            assert_eq!(total_tjurina(&moved), total_tjurina(&a));
            assert_eq!(mdr(&moved.polynomial()), r);
        }
    }
}

#[test]
fn syzygy_bases_are_relations_and_exclude_euler() {
    for b in [Builtin::Az, Builtin::AzPrime, Builtin::Triangle] {
        let f = b.arrangement().polynomial();
        let d = f.degree();
        for k in 0..d {
            let basis = syzygy_space(&f, k);
            for rho in &basis {
                assert!(apply(&f, rho).is_zero());
            }
            if k == 1 {
                // (x, y, z) is not in the span
                let mut rows: Vec<Vec<Rational>> = basis
                    .iter()
                    .map(|rho| rho.iter().flat_map(|c| c.coeffs().to_vec()).collect())
                    .collect();
                let n = rows.len();
                let e = |i: usize| -> Vec<Rational> {
                    let mut v = vec![Rational::from_integer(0.into()); 3];
                    v[i] = Rational::from_integer(1.into());
                    v
                };
                rows.push((0..3).flat_map(e).collect());
                assert_eq!(RatMatrix::from_rows(9, rows).unwrap().rank(), n + 1);
            }
        }
        // Koszul relations exist in degree d - 1
        assert!(!syzygy_space(&f, d - 1).is_empty());
    }
}

#[test]
fn adding_a_line_never_lowers_mdr() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut checked = 0;
    while checked < 20 {
        let n = rng.gen_range(4..=7);
        let a = random_arrangement(&mut rng, n);
        let c: [i64; 3] = std::array::from_fn(|_| rng.gen_range(-4..=4));
        let Some(l) = LinearForm::from_ints(c[0], c[1], c[2]) else {
            continue;
        };
        let Ok(b) = a.add_line(l) else { continue };
        assert!(mdr(&b.polynomial()) >= mdr(&a.polynomial()));
        checked += 1;
    }
    for (small, big) in [
        (Builtin::Az, Builtin::Bz),
        (Builtin::AzPrime, Builtin::BzPrime),
    ] {
        assert!(mdr(&big.arrangement().polynomial()) >= mdr(&small.arrangement().polynomial()));
    }
}

#[test]
fn condition_rows_and_stabilization() {
    for b in [Builtin::Az, Builtin::Bz, Builtin::Triangle] {
        let a = b.arrangement();
        let tau = total_tjurina(&a);
        let d = a.len() as u32;
        let mut last = 0;
        for k in 0..=2 * d {
            let cm = condition_matrix(&a, k).unwrap();
            assert_eq!(cm.matrix.rows(), tau);
            let codim = cm.matrix.rank();
            assert!(codim >= last);
            last = codim;
        }
        assert_eq!(last, tau);
    }
}

#[test]
fn jacobian_pieces_satisfy_every_local_condition() {
    let a = Builtin::Az.arrangement();
    let f = a.polynomial();
    for k in 8..=10 {
        let cm = condition_matrix(&a, k).unwrap();
        for v in jacobian_piece(&f, k).basis() {
            assert!(cm
                .matrix
                .mul_vec(&v)
                .unwrap()
                .iter()
                .all(|x| *x == Rational::from_integer(0.into())));
        }
    }
}

#[test]
fn pascal_line_exists_exactly_on_a_conic() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut on, mut off) = (0, 0);
    while on < 500 || off < 500 {
        let on_conic = on < 500 && (off >= 500 || rng.gen_bool(0.5));
        let pts = if on_conic {
            random_conic_points(&mut rng)
        } else {
            random_points(&mut rng)
        };
        let Ok(h) = Hexagon::new(pts.try_into().unwrap()) else {
            continue;
        };
        let outcome = match h.pascal_line() {
            Ok(o) => o,
            Err(HexagonError::DegenerateOppositePoints) => continue,
            Err(e) => panic!("{e}"),
        };
        let conic = h.on_conic().is_some();
        if on_conic {
            assert!(conic);
        }
        assert_eq!(matches!(outcome, PascalOutcome::Line(_)), conic);
        if conic {
            on += 1;
        } else {
            off += 1;
        }
    }
}

#[test]
fn tangent_rank_ignores_coordinates_and_labels() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut seen = 0;
    while seen < 12 {
        let pts = if seen % 2 == 0 {
            random_conic_points(&mut rng)
        } else {
            random_points(&mut rng)
        };
        let Ok(h) = Hexagon::new(pts.try_into().unwrap()) else {
            continue;
        };
        let Ok(t) = h.tangent_system() else { continue };
        let m = random_transform(&mut rng, 3);
        let moved: Vec<ProjPoint> = h
            .vertices()
            .iter()
            .map(|p| p.transform(&m).unwrap())
            .collect();
        let moved = Hexagon::new(moved.try_into().unwrap()).unwrap();
        assert_eq!(moved.tangent_system().unwrap().rank, t.rank);
        for shift in 1..6 {
            assert_eq!(h.rotated(shift).tangent_system().unwrap().rank, t.rank);
        }
        seen += 1;
    }
}

#[test]
fn octic_agrees_with_the_gap_for_inscribed_hexagons() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut seen = 0;
    while seen < 3 {
        let Ok(h) = Hexagon::new(random_conic_points(&mut rng).try_into().unwrap()) else {
            continue;
        };
        let Ok(a) = h.build_arrangement() else {
            continue;
        };
        let o = h.pascal_octic().unwrap();
        assert_eq!(o.system.rank, 2);
        assert!(o.certified);
        let gap = gap_certificate(&a, 8).unwrap().expect("I_8 != J_8");
        assert!(congruent_mod_jacobian(
            &a,
            &o.polynomial(),
            &gap.polynomial()
        ));
        seen += 1;
    }
}

#[test]
fn generic_hexagon_dimensions_in_degree_eight() {
    let h = Hexagon::from_ints([
        [5, -4, -3],
        [7, 0, -2],
        [1, -2, -1],
        [3, -1, -2],
        [7, -8, 1],
        [4, 3, -1],
    ])
    .unwrap();
    let a = h.build_arrangement().unwrap();
    assert_eq!(h.tangent_system().unwrap().rank, 3);
    let cm = condition_matrix(&a, 8).unwrap();
    assert_eq!(cm.matrix.rank(), 42);
    assert_eq!(graded_dim(8) - cm.matrix.rank(), 3);
    assert!(gap_certificate(&a, 8).unwrap().is_none());
}

#[test]
fn builtin_fixtures() {
    let factors = |b: Builtin| -> Vec<String> {
        let mut v: Vec<String> = b
            .arrangement()
            .lines()
            .iter()
            .map(|l| l.to_string())
            .collect();
        v.sort();
        v
    };
    let expect = |s: &str| -> Vec<String> {
        let mut v: Vec<String> = ziegler::poly::parse_linear_factors(s)
            .unwrap()
            .iter()
            .map(|l| l.to_string())
            .collect();
        v.sort();
        v
    };
    assert_eq!(
        factors(Builtin::Az),
        expect("xyz(x+y-z)(x-y+z)(2x-2y+z)(2x-y-2z)(2x+y+z)(2x-y-z)")
    );
    assert_eq!(
        factors(Builtin::Ad),
        expect("xy(x-y-z)(x-y+z)(2x+y-2z)(x+3y-3z)(3x+2y+3z)(x+5y+5z)(7x-4y-z)")
    );
    assert_eq!(
        factors(Builtin::AdPrime),
        expect("xy(4x-5y-5z)(x-y+z)(16x+13y-20z)(x+3y-3z)(3x+2y+3z)(x+5y+5z)(7x-4y-z)")
    );
    assert_eq!(
        factors(Builtin::Bz),
        expect("xyz(x+y-z)(x-y+z)(2x-2y+z)(2x-y-2z)(2x+y+z)(2x-y-z)(x-y-z)")
    );
    assert_eq!(factors(Builtin::AzPrime), {
        let mut v: Vec<String> = ziegler::builtins::moved_az()
            .lines()
            .iter()
            .map(|l| l.to_string())
            .collect();
        v.sort();
        v
    });
}

#[test]
fn reports_round_trip_through_json() {
    let subject = Subject::Arrangement {
        label: "AZ".into(),
        arrangement: Builtin::Az.arrangement(),
        diagonals: Builtin::Az.diagonals(),
    };
    let r = analyze(&subject, None).unwrap();
    let back: AnalysisReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(back, r);
    let other = Subject::Arrangement {
        label: "AD".into(),
        arrangement: Builtin::Ad.arrangement(),
        diagonals: Builtin::Ad.diagonals(),
    };
    let c = compare(&subject, &other).unwrap();
    let back: Comparison = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
    assert_eq!(back, c);
    assert!(!c.ziegler_pair);
}
