//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. All comparisons are exact.

use std::process::ExitCode;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::SeedableRng;

use quatsuper::algebra::basis_parity;
use quatsuper::biderivations::{
    adjudicate_real_part, canonical_eval, is_super_biderivation, solve_biderivations,
    CanonicalFamily,
};
use quatsuper::derivations::{
    inner_superderivation, is_superderivation, outer_dimension, solve_superderivations,
};
use quatsuper::local::{classify_local, exhaustive_local_check, Locality};
use quatsuper::sampling::{
    random_basis_consistent, random_derivation, random_linmap, random_quaternion,
};
use quatsuper::{
    AlgebraParams, BiderivationSpec, BilinMap, LinMap, Matrix, Parity, Ring, Symmetry,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn q(a: &str, b: &str) -> AlgebraParams {
    let r = Ring::Rationals;
    AlgebraParams::new(r, r.parse(a).unwrap(), r.parse(b).unwrap()).unwrap()
}

fn fp(p: u64, a: i64, b: i64) -> AlgebraParams {
    AlgebraParams::from_i64(Ring::prime_field(p).unwrap(), a, b).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Zero pattern and couplings of the one- and two-parameter forms, 0-based
/// `(row, col)`: degree 0 has `(2,3) = -a·(3,2)`; degree 1 has `(2,1) = -b⁻¹(0,3)`
/// and `(3,1) = b⁻¹(0,2)`.
fn has_derivation_shape(m: &LinMap, degree: Parity) -> bool {
    let h = m.params();
    let (a, b_inv) = (h.a(), h.b_inv());
    let free: &[(usize, usize)] = match degree {
        Parity::Even => &[(3, 2), (2, 3)],
        Parity::Odd => &[(0, 2), (0, 3), (2, 1), (3, 1)],
    };
    let zeros_ok =
        (0..4).all(|r| (0..4).all(|c| free.contains(&(r, c)) || m.entry(r, c).is_zero()));
    let couplings_ok = match degree {
        Parity::Even => *m.entry(2, 3) == -(a * m.entry(3, 2)),
        Parity::Odd => {
            *m.entry(2, 1) == -(b_inv * m.entry(0, 3)) && *m.entry(3, 1) == b_inv * m.entry(0, 2)
        }
    };
    zeros_ok && couplings_ok
}

fn derivation_dimensions() -> Outcome {
    let algebras = [
        q("1", "1"),
        q("2", "3"),
        q("-1/2", "5/3"),
        fp(5, 1, 1),
        fp(5, 2, 3),
        fp(5, 4, 2),
        fp(7, 1, 1),
        fp(7, 3, 5),
        fp(7, 6, 2),
    ];
    for h in &algebras {
        for (degree, dim) in [(Parity::Even, 1), (Parity::Odd, 2)] {
            let s = solve_superderivations(h, degree).map_err(|e| e.to_string())?;
            ensure(s.dim() == dim, || {
                format!("{h}: degree {degree} has dim {}", s.dim())
            })?;
            for m in &s.maps {
                ensure(has_derivation_shape(m, degree), || {
                    format!("{h}: basis map off the shape\n{m}")
                })?;
            }
        }
    }
    Ok(format!(
        "{} algebras, dims 1 and 2, shapes exact",
        algebras.len()
    ))
}

fn local_matches_exhaustive() -> Outcome {
    const UNIFORM: usize = 10_000;
    const STRUCTURED: usize = 1_000;
    let mut summary = Vec::new();
    for (i, h) in [fp(3, 1, 2), fp(5, 2, 3)].iter().enumerate() {
        for degree in [Parity::Even, Parity::Odd] {
            let mut rng = StdRng::seed_from_u64(1000 + 2 * i as u64 + degree.value() as u64);
            let mut maps: Vec<LinMap> = (0..UNIFORM).map(|_| random_linmap(h, &mut rng)).collect();
            for _ in 0..STRUCTURED {
                maps.push(random_basis_consistent(h, degree, &mut rng));
                maps.push(random_derivation(h, degree, &mut rng));
            }
            let mut local = 0;
            for m in &maps {
                let verdict = classify_local(m, degree).map_err(|e| e.to_string())?;
                let oracle = exhaustive_local_check(m, degree).map_err(|e| e.to_string())?;
                ensure(
                    verdict.is_derivation() == (oracle == Locality::Local),
                    || format!("{h}, degree {degree}: classifier and sweep disagree on\n{m}"),
                )?;
                if verdict.is_derivation() {
                    local += 1;
                    ensure(is_superderivation(m, degree).is_ok(), || {
                        format!("{h}, degree {degree}: derivation verdict on a non-derivation\n{m}")
                    })?;
                }
            }
            summary.push(format!(
                "{} degree {degree}: {} maps, {local} local",
                h.ring(),
                maps.len()
            ));
        }
    }
    Ok(summary.join("; "))
}

fn inner_and_outer() -> Outcome {
    for h in [q("2", "-3"), fp(5, 2, 3), fp(7, 3, 5)] {
        let all =
            quatsuper::derivations::solve_all_superderivations(&h).map_err(|e| e.to_string())?;
        let inner: Vec<_> = h
            .basis_elements()
            .iter()
            .map(|e| inner_superderivation(e).to_flat())
            .collect();
        for v in &inner {
            ensure(all.contains(v).unwrap(), || {
                format!("{h}: inner map outside Der_s")
            })?;
        }
        let rank = Matrix::from_columns(h.ring(), 16, &inner)
            .unwrap()
            .rank()
            .unwrap();
        ensure(rank == 3, || format!("{h}: inner maps span dim {rank}"))?;
        let outer = outer_dimension(&h).map_err(|e| e.to_string())?;
        ensure(outer == 0, || format!("{h}: dim Out_s = {outer}"))?;
    }
    Ok("dim Inn_s = 3, dim Out_s = 0 over Q, F_5, F_7".into())
}

fn proportional(a: &BilinMap, b: &BilinMap) -> bool {
    let cols = vec![a.to_flat(), b.to_flat()];
    Matrix::from_columns(a.params().ring(), 64, &cols)
        .unwrap()
        .rank()
        .unwrap()
        == 1
}

fn degree_zero_biderivations() -> Outcome {
    let mut coeffs = Vec::new();
    for h in [q("2", "3"), fp(5, 2, 3), fp(7, 3, 5)] {
        let canonical = CanonicalFamily::new(h.ring().one())
            .to_bilinmap(&h)
            .unwrap();
        ensure(
            is_super_biderivation(&canonical, Parity::Even).is_ok(),
            || format!("{h}: canonical family fails an identity"),
        )?;
        for symmetry in [Symmetry::SuperSkew, Symmetry::Any] {
            let s = solve_biderivations(&h, BiderivationSpec::new(Parity::Even, symmetry))
                .map_err(|e| e.to_string())?;
            ensure(s.dim() == 1, || {
                format!("{h}: degree 0 {symmetry} has dim {}", s.dim())
            })?;
            ensure(proportional(&s.maps[0], &canonical), || {
                format!("{h}: degree 0 {symmetry} basis not proportional to the canonical family")
            })?;
        }
        let adj = adjudicate_real_part(&h).map_err(|e| e.to_string())?;
        ensure(adj.consistent(), || {
            format!("{h}: solver basis and canonical_eval disagree: {adj:?}")
        })?;
        let lam = h.ring().one();
        let jj = canonical_eval(&lam, &h.basis(2), &h.basis(2)).unwrap();
        ensure(*jj.coeff(0) == adj.certified_x3y3, || {
            format!("{h}: canonical_eval(j, j) = {jj}")
        })?;
        coeffs.push(format!(
            "{}: x3y3 coefficient {} (displayed -ab = {})",
            h, adj.certified_x3y3, adj.displayed_x3y3
        ));
    }
    Ok(format!(
        "dims 1, proportional, 128 identities hold; {}",
        coeffs.join("; ")
    ))
}

fn vanishing_biderivations() -> Outcome {
    let specs = [
        (Parity::Even, Symmetry::SuperSymmetric),
        (Parity::Odd, Symmetry::SuperSkew),
        (Parity::Odd, Symmetry::SuperSymmetric),
        (Parity::Odd, Symmetry::Any),
    ];
    for h in [q("-1", "-1"), fp(5, 2, 3), fp(7, 3, 5)] {
        for (degree, symmetry) in specs {
            let s = solve_biderivations(&h, BiderivationSpec::new(degree, symmetry))
                .map_err(|e| e.to_string())?;
            ensure(s.dim() == 0, || {
                format!("{h}: degree {degree} {symmetry} has dim {}", s.dim())
            })?;
        }
    }
    Ok("4 spaces vanish over Q, F_5, F_7".into())
}

fn algebraic_laws() -> Outcome {
    let mut rng = StdRng::seed_from_u64(6);
    for h in [q("2", "3"), q("-1/2", "7"), fp(5, 2, 3), fp(7, 3, 5)] {
        let basis = h.basis_elements();
        for x in &basis {
            for y in &basis {
                for z in &basis {
                    ensure(&(x * y) * z == x * &(y * z), || {
                        format!("{h}: ({x}{y}){z} != {x}({y}{z})")
                    })?;
                }
            }
        }
        for p in 0..4 {
            for q in 0..4 {
                let (x, y) = (&basis[p], &basis[q]);
                let lhs = x.lie_super(y).unwrap();
                let swapped = y.lie_super(x).unwrap();
                let both_odd = basis_parity(p).is_odd() && basis_parity(q).is_odd();
                let rhs = if both_odd { swapped } else { -swapped };
                ensure(lhs == rhs, || {
                    format!("{h}: super-anticommutativity fails at ({x}, {y})")
                })?;
                let prod = x * y;
                ensure(
                    prod.parity_of().unwrap() == basis_parity(p) + basis_parity(q),
                    || format!("{h}: {x}{y} has the wrong parity"),
                )?;
            }
        }
        for _ in 0..50 {
            let (x, y) = (
                random_quaternion(&h, &mut rng),
                random_quaternion(&h, &mut rng),
            );
            for (px, py) in [
                (Parity::Even, Parity::Even),
                (Parity::Even, Parity::Odd),
                (Parity::Odd, Parity::Odd),
            ] {
                let (xs, ys) = (x.component(px), y.component(py));
                let prod = &xs * &ys;
                ensure(prod.component(px + py + Parity::Odd).is_zero(), || {
                    format!(
                        "{h}: product of parts of parity {px}, {py} leaves A_{}",
                        px + py
                    )
                })?;
            }
        }
        let canonical = CanonicalFamily::new(h.ring().one())
            .to_bilinmap(&h)
            .unwrap();
        for (p, x) in basis.iter().enumerate() {
            let slice = canonical.left_slice(x).unwrap();
            let degree = basis_parity(p);
            ensure(is_superderivation(&slice, degree).is_ok(), || {
                format!("{h}: δ({x}, ·) is not a superderivation of degree {degree}")
            })?;
        }
    }
    Ok("associativity (64), super-anticommutativity (16), grading, slices over 4 algebras".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 6] = [
        (
            "AC1 derivation-space dimensions and shapes",
            derivation_dimensions,
        ),
        (
            "AC2 local superderivations agree with the exhaustive sweep",
            local_matches_exhaustive,
        ),
        ("AC3 inner span and outer dimension", inner_and_outer),
        (
            "AC4 degree-0 super-biderivations are the canonical family",
            degree_zero_biderivations,
        ),
        (
            "AC5 remaining super-biderivation spaces vanish",
            vanishing_biderivations,
        ),
        ("AC6 algebraic laws", algebraic_laws),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {name} [{secs:.2}s]: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name} [{secs:.2}s]: {detail}");
            }
        }
    }
    println!("{} of 6 criteria passed", 6 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
