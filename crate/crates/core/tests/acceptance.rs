//! Acceptance suite: every check is an exact identity. Prints one line per
//! criterion and exits non-zero if any fails.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;

use centraliser::algebra::{factorize_basis, square_reduction};
use centraliser::idempotents::{
    admissible_g, block_basis_elements, block_dimension, build_idempotent, build_truncated,
    exhaustive_idempotent_scan, idempotent_subset_sums, orthogonality_check, span_rank,
    verify_complete_set, Truncation,
};
use centraliser::oracle::{
    compare_structure_constants, idempotent_rank_report, DEFAULT_COST_BOUND,
};
use centraliser::{
    AlgebraContext, AlgebraElement, AlgebraExt, Field, ModAlgebra, PrimeField, Rationals,
};

const M_MAX: u64 = 16;
const LAMBDA2_MAX: usize = 64;

type Outcome = Result<(), String>;

fn f2(m: u64, lambda2: usize) -> Arc<ModAlgebra> {
    AlgebraContext::new(PrimeField::new(2).unwrap(), m, lambda2).unwrap()
}

fn fp(p: u32, m: u64, lambda2: usize) -> Arc<ModAlgebra> {
    AlgebraContext::new(PrimeField::new(p).unwrap(), m, lambda2).unwrap()
}

fn grid() -> Vec<(u64, usize)> {
    (0..=M_MAX)
        .flat_map(|m| (0..=LAMBDA2_MAX).map(move |l| (m, l)))
        .collect()
}

/// Collects the first failure of a parallel sweep, in grid order.
fn sweep<T: Sync>(points: &[T], check: impl Fn(&T) -> Outcome + Sync) -> Outcome {
    let failures: Vec<String> = points.par_iter().filter_map(|pt| check(pt).err()).collect();
    match failures.first() {
        None => Ok(()),
        Some(first) => Err(format!("{} failures, first: {first}", failures.len())),
    }
}

fn binom(n: u64, k: u64) -> BigUint {
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn criterion_1() -> Outcome {
    sweep(&grid(), |&(m, l)| {
        let ctx = f2(m, l);
        let report = verify_complete_set(&ctx).map_err(|e| e.to_string())?;
        // count from big-integer parity, independent of digit arithmetic
        let expected: Vec<u64> = (0..=l as u64)
            .filter(|&g| binom(m + 2 * g, g).bit(0))
            .collect();
        if !report.pass || report.admissible_g != expected {
            return Err(format!("m={m} lambda2={l}: {report:?}"));
        }
        Ok(())
    })
}

fn criterion_2() -> Outcome {
    sweep(&grid(), |&(m, l)| {
        let ctx = f2(m, l);
        for g in admissible_g(&ctx).map_err(|e| e.to_string())? {
            let top = m + 2 * g;
            for s in 0..u64::BITS {
                if (1usize << s.min(63)) > l {
                    break;
                }
                if (top >> s) & 1 == 0 && (g >> s) & 1 == 0 {
                    let ok = orthogonality_check(&ctx, g, s).map_err(|e| e.to_string())?;
                    if !ok {
                        return Err(format!("m={m} lambda2={l} g={g} s={s}"));
                    }
                }
            }
        }
        Ok(())
    })
}

fn oracle_points() -> Vec<(usize, usize, u32)> {
    let mut pts = Vec::new();
    for r in 0..=12usize {
        for l in 0..=r / 2 {
            for p in [2, 3, 5] {
                pts.push((r, l, p));
            }
        }
    }
    pts
}

fn criterion_3() -> Outcome {
    for (r, l, p) in oracle_points() {
        let report =
            compare_structure_constants(r, l, p, DEFAULT_COST_BOUND).map_err(|e| e.to_string())?;
        if !report.pass {
            return Err(format!("r={r} lambda2={l} p={p}: {report:?}"));
        }
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    for r in 0..=12u64 {
        for l in 0..=(r / 2) as usize {
            let ctx = f2(r - 2 * l as u64, l);
            let report =
                idempotent_rank_report(&ctx, DEFAULT_COST_BOUND).map_err(|e| e.to_string())?;
            let dim = binom(r, l as u64);
            let sum_ok = BigUint::from(report.rank_sum) == dim;
            if !report.pass || !sum_ok || report.per_g.iter().any(|e| e.rank == 0) {
                return Err(format!("r={r} lambda2={l}: {report:?}"));
            }
        }
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    let mut pts = Vec::new();
    for p in [2u32, 3, 5] {
        for m in 0..=10u64 {
            for l in 0..=40usize {
                pts.push((p, m, l));
            }
        }
    }
    sweep(&pts, |&(p, m, l)| {
        let ctx = fp(p, m, l);
        for i in 0..=l {
            let product = factorize_basis(i, &ctx).map_err(|e| e.to_string())?;
            if product != ctx.basis(i).unwrap() {
                return Err(format!("p={p} m={m} lambda2={l} i={i}: got {product}"));
            }
        }
        Ok(())
    })
}

fn criterion_6() -> Outcome {
    sweep(&grid(), |&(m, l)| {
        let ctx = f2(m, l);
        let mut t = 0u32;
        while (1usize << t) <= l {
            let q = 1usize << t;
            let reduced = square_reduction(t, &ctx).map_err(|e| e.to_string())?;
            let direct = ctx.mult_basis(q, q).unwrap();
            if reduced != direct {
                return Err(format!("m={m} lambda2={l} t={t}: {reduced} vs {direct}"));
            }
            if !direct.is_idempotent() {
                return Err(format!("m={m} lambda2={l}: b(2^{t})^2 not idempotent"));
            }
            let low_digits_zero = (0..=t).all(|j| (m >> j) & 1 == 0);
            if low_digits_zero && !direct.is_zero() {
                return Err(format!(
                    "m={m} lambda2={l}: b(2^{t})^2 = {direct}, expected 0"
                ));
            }
            t += 1;
        }
        Ok(())
    })
}

/// `Π_{a<k} (x − a(m+a+1))` by repeated multiplication.
fn falling_product(k: usize, m: u64, x: &AlgebraElement<Rationals>) -> AlgebraElement<Rationals> {
    let ctx = x.context();
    let q = Rationals;
    (0..k as u64).fold(ctx.one(), |acc, a| {
        let shift = ctx.one().scale(&q.from_i64((a * (m + a + 1)) as i64));
        acc.multiply(&x.try_sub(&shift).unwrap()).unwrap()
    })
}

fn criterion_7() -> Outcome {
    let q = Rationals;
    let mut pts = Vec::new();
    for m in 0..=8u64 {
        for l in 0..=10usize {
            pts.push((m, l));
        }
    }
    sweep(&pts, |&(m, l)| {
        let ctx = AlgebraContext::new(Rationals, m, l).unwrap();
        let x = ctx.basis_or_zero(1);
        let mut factorial = BigUint::one();
        for k in 1..=l {
            factorial *= k;
            let sq = num_bigint::BigInt::from(&factorial * &factorial);
            let lhs = ctx.basis(k).unwrap().scale(&q.from_bigint(&sq));
            if lhs != falling_product(k, m, &x) {
                return Err(format!("m={m} lambda2={l} k={k}"));
            }
        }
        if !falling_product(l + 1, m, &x).is_zero() {
            return Err(format!("m={m} lambda2={l}: F_(lambda2+1)(b(1)) != 0"));
        }
        Ok(())
    })
}

fn criterion_8() -> Outcome {
    let mut pts = Vec::new();
    for m in 0..=8u64 {
        for l in 0..=10usize {
            pts.push((m, l));
        }
    }
    sweep(&pts, |&(m, l)| {
        let ctx = f2(m, l);
        let scan = exhaustive_idempotent_scan(&ctx).map_err(|e| e.to_string())?;
        let sums = idempotent_subset_sums(&ctx).map_err(|e| e.to_string())?;
        if scan != sums {
            return Err(format!(
                "m={m} lambda2={l}: {} vs {}",
                scan.len(),
                sums.len()
            ));
        }
        let k = admissible_g(&ctx).unwrap().len();
        if scan.len() != 1 << k {
            return Err(format!("m={m} lambda2={l}: {} idempotents", scan.len()));
        }
        if m == 0 && scan != vec![ctx.zero(), ctx.one()] {
            return Err(format!("lambda2={l}: m=0 has {} idempotents", scan.len()));
        }
        Ok(())
    })
}

fn criterion_9() -> Outcome {
    let mut pts = Vec::new();
    for p in [2u32, 3, 5] {
        for m in [0u64, 1, 2, 3, 4, 7] {
            for l in 0..=20usize {
                pts.push((p, m, l));
            }
        }
    }
    sweep(&pts, |&(p, m, l)| {
        let ctx = fp(p, m, l);
        let basis: Vec<_> = (0..=l).map(|a| ctx.basis(a).unwrap()).collect();
        for i in 0..=l {
            for j in 0..=l {
                let ij = &basis[i] * &basis[j];
                for k in 0..=l {
                    let jk = &basis[j] * &basis[k];
                    if &ij * &basis[k] != &basis[i] * &jk {
                        return Err(format!("p={p} m={m} lambda2={l} ({i},{j},{k})"));
                    }
                }
            }
        }
        Ok(())
    })
}

fn criterion_10() -> Outcome {
    sweep(&grid(), |&(m, l)| {
        let ctx = f2(m, l);
        let width = u64::BITS - (m + 2 * l as u64).leading_zeros();
        for g in admissible_g(&ctx).map_err(|e| e.to_string())? {
            for t in 0..=width {
                for trunc in [Truncation::AtMost(t), Truncation::Below(t)] {
                    let e = build_truncated(&ctx, g, trunc).map_err(|e| e.to_string())?;
                    if !e.is_idempotent() {
                        return Err(format!("m={m} lambda2={l} g={g} {trunc:?}"));
                    }
                }
            }
        }
        Ok(())
    })
}

/// Blocks partition the algebra and the listed block bases are independent.
fn block_partition() -> Outcome {
    let pts: Vec<_> = grid().into_iter().filter(|&(_, l)| l <= 32).collect();
    sweep(&pts, |&(m, l)| {
        let ctx = f2(m, l);
        let mut total = 0;
        for g in admissible_g(&ctx).map_err(|e| e.to_string())? {
            let dim = block_dimension(&ctx, g).map_err(|e| e.to_string())?;
            let listed = block_basis_elements(&ctx, g).map_err(|e| e.to_string())?;
            if span_rank(&ctx, &listed) != listed.len() || listed.len() != dim {
                return Err(format!(
                    "m={m} lambda2={l} g={g}: listed {} vs {dim}",
                    listed.len()
                ));
            }
            let e = build_idempotent(&ctx, g).unwrap();
            if listed.first() != Some(&e) {
                return Err(format!(
                    "m={m} lambda2={l} g={g}: first basis element is not e"
                ));
            }
            total += dim;
        }
        if total != l + 1 {
            return Err(format!(
                "m={m} lambda2={l}: block dimensions sum to {total}"
            ));
        }
        Ok(())
    })
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        (
            "1  complete set of orthogonal idempotents, m<=16, lambda2<=64",
            criterion_1,
        ),
        ("2  orthogonality through zero columns", criterion_2),
        (
            "3  structure constants vs tensor-space matrices, r<=12, p in {2,3,5}",
            criterion_3,
        ),
        (
            "4  idempotent ranks partition binom(r, lambda2), r<=12",
            criterion_4,
        ),
        (
            "5  p-adic factorization of b(i), lambda2<=40, m<=10",
            criterion_5,
        ),
        (
            "6  square reduction and idempotent squares, lambda2<=64",
            criterion_6,
        ),
        (
            "7  characteristic-zero identities, m<=8, lambda2<=10",
            criterion_7,
        ),
        (
            "8  exhaustive idempotent scan equals subset sums, lambda2<=10",
            criterion_8,
        ),
        (
            "9  associativity on basis triples, lambda2<=20",
            criterion_9,
        ),
        ("10 truncated idempotents, m<=16, lambda2<=64", criterion_10),
        (
            "-  block bases are independent and partition the algebra, lambda2<=32",
            block_partition,
        ),
    ];
    let mut all = true;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS  {name}  ({secs:.1}s)"),
            Err(detail) => {
                all = false;
                println!("FAIL  {name}  ({secs:.1}s): {detail}");
            }
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
