use std::fmt::Write;
use std::sync::Arc;

use serde::Serialize;
use serde_json::json;

use centraliser::algebra::{
    char0_basis_identity, f_polynomial, minimal_polynomial_check, powers_of_b1_independent,
    ElementJson,
};
use centraliser::idempotents::{
    admissible_g, block_basis_elements, block_description, block_dimension, span_rank,
    verify_complete_set, IdempotentDescriptor, VerificationReport,
};
use centraliser::oracle::{compare_structure_constants, idempotent_rank_report};
use centraliser::padic::{kostka_cell, kostka_window};
use centraliser::{AlgebraContext, ModAlgebra, PrimeField, Rationals, Result};

use crate::Format;

pub struct Outcome {
    pub body: String,
    pub pass: bool,
    /// Printed to standard error when `pass` is false.
    pub failures: Vec<String>,
}

impl Outcome {
    fn passed(body: String) -> Self {
        Self {
            body,
            pass: true,
            failures: Vec::new(),
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn f2(m: u64, lambda2: usize) -> Result<Arc<ModAlgebra>> {
    AlgebraContext::new(PrimeField::new(2)?, m, lambda2)
}

fn list<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

pub fn kostka(m_max: u64, g_max: u64, p: u32, format: Format) -> Result<Outcome> {
    let p = u64::from(p);
    let window = kostka_window(m_max, g_max, p)?;
    let body = match format {
        Format::Csv => window.to_csv(),
        Format::Json => {
            let mut s = window.to_json();
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = String::new();
            for row in &window.rows {
                let cells: Vec<String> = row.iter().map(u8::to_string).collect();
                writeln!(s, "{}", cells.join(" ")).unwrap();
            }
            s.push('\n');
            for m in 0..=m_max {
                for g in 0..=g_max {
                    let cell = kostka_cell(m, g, p)?;
                    let columns: Vec<String> = cell
                        .columns
                        .iter()
                        .enumerate()
                        .map(|(u, c)| {
                            if p == 2 {
                                format!("{c}={}", c.factor_symbol(u))
                            } else {
                                c.to_string()
                            }
                        })
                        .collect();
                    writeln!(
                        s,
                        "m={m} g={g} K={}: {}",
                        u8::from(cell.nonzero),
                        if columns.is_empty() {
                            "1".to_string()
                        } else {
                            columns.join(" ")
                        }
                    )
                    .unwrap();
                }
            }
            s
        }
    };
    Ok(Outcome::passed(body))
}

#[derive(Serialize)]
struct IdempotentEntry {
    g: u64,
    #[serde(rename = "I")]
    i: Vec<u32>,
    #[serde(rename = "J")]
    j: Vec<u32>,
    factored: String,
    expanded: String,
    element: ElementJson,
}

pub fn idempotents(m: u64, lambda2: usize, format: Format) -> Result<Outcome> {
    let ctx = f2(m, lambda2)?;
    let mut entries = Vec::new();
    for g in admissible_g(&ctx)? {
        let descriptor = IdempotentDescriptor::new(m, g)?;
        let e = descriptor.evaluate(&ctx)?;
        entries.push(IdempotentEntry {
            g,
            i: descriptor.index_sets.i.clone(),
            j: descriptor.index_sets.j.clone(),
            factored: descriptor.factored(),
            expanded: e.to_string(),
            element: e.to_json(),
        });
    }
    let body = match format {
        Format::Json => to_json(&json!({
            "m": m,
            "lambda2": lambda2,
            "r": ctx.r(),
            "idempotents": entries,
        })),
        Format::Csv => {
            let mut s = String::from("g,I,J,factored,expanded,coeffs\n");
            for e in &entries {
                writeln!(
                    s,
                    "{},{},{},{},{},{}",
                    e.g,
                    list(&e.i).replace(',', " "),
                    list(&e.j).replace(',', " "),
                    e.factored,
                    e.expanded,
                    e.element.coeffs.join(" ")
                )
                .unwrap();
            }
            s
        }
        Format::Text => {
            let mut s = format!("m={m} lambda2={lambda2} r={}\n", ctx.r());
            for e in &entries {
                writeln!(
                    s,
                    "e_{{{m},{}}} = {} = {}    I=[{}] J=[{}]",
                    e.g,
                    e.factored,
                    e.expanded,
                    list(&e.i),
                    list(&e.j)
                )
                .unwrap();
            }
            s
        }
    };
    Ok(Outcome::passed(body))
}

fn verify_line(r: &VerificationReport) -> String {
    format!(
        "m={} lambda2={} r={} admissible=[{}] idempotent={} orthogonal={} sum_is_identity={} count_matches={} {}",
        r.m,
        r.lambda2,
        r.r,
        list(&r.admissible_g),
        r.idempotent.iter().all(|&x| x),
        r.orthogonal.iter().all(|&x| x),
        r.sum_is_identity,
        r.count_matches,
        if r.pass { "PASS" } else { "FAIL" }
    )
}

pub fn verify(points: &[(u64, usize)], sweep: bool, format: Format) -> Result<Outcome> {
    let reports = points
        .iter()
        .map(|&(m, l)| verify_complete_set(&f2(m, l)?))
        .collect::<Result<Vec<_>>>()?;
    let failed: Vec<&VerificationReport> = reports.iter().filter(|r| !r.pass).collect();
    let body = match format {
        Format::Json if sweep => to_json(&reports),
        Format::Json => to_json(&reports[0]),
        Format::Csv => {
            let mut s = String::from(
                "m,lambda2,r,admissible_g,idempotent,orthogonal,sum_is_identity,count_matches,pass\n",
            );
            for r in &reports {
                writeln!(
                    s,
                    "{},{},{},{},{},{},{},{},{}",
                    r.m,
                    r.lambda2,
                    r.r,
                    list(&r.admissible_g).replace(',', " "),
                    r.idempotent.iter().all(|&x| x),
                    r.orthogonal.iter().all(|&x| x),
                    r.sum_is_identity,
                    r.count_matches,
                    r.pass
                )
                .unwrap();
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for r in &reports {
                writeln!(s, "{}", verify_line(r)).unwrap();
            }
            if sweep {
                writeln!(
                    s,
                    "{} of {} contexts pass",
                    reports.len() - failed.len(),
                    reports.len()
                )
                .unwrap();
            }
            s
        }
    };
    Ok(Outcome {
        body,
        pass: failed.is_empty(),
        failures: failed
            .iter()
            .map(|r| serde_json::to_string(r).expect("report serializes"))
            .collect(),
    })
}

pub fn oracle(m: u64, lambda2: usize, p: u32, cost_bound: u128, format: Format) -> Result<Outcome> {
    let r = usize::try_from(m)
        .unwrap_or(usize::MAX)
        .saturating_add(2 * lambda2);
    let structure = compare_structure_constants(r, lambda2, p, cost_bound)?;
    let ranks = if p == 2 {
        Some(idempotent_rank_report(&f2(m, lambda2)?, cost_bound)?)
    } else {
        None
    };
    let pass = structure.pass && ranks.as_ref().map_or(true, |x| x.pass);
    let body = match format {
        Format::Json => to_json(&json!({ "structure": structure, "ranks": ranks })),
        Format::Csv => {
            let mut s = String::from("check,value\n");
            writeln!(s, "dim,{}", structure.dim).unwrap();
            writeln!(s, "products_checked,{}", structure.products_checked).unwrap();
            writeln!(s, "mismatches,{}", structure.mismatches.len()).unwrap();
            writeln!(s, "independent,{}", structure.independent).unwrap();
            writeln!(s, "truncation_zero,{}", structure.truncation_zero).unwrap();
            if let Some(rk) = &ranks {
                for e in &rk.per_g {
                    writeln!(s, "rank_g{},{}", e.g, e.rank).unwrap();
                }
                writeln!(s, "rank_sum,{}", rk.rank_sum).unwrap();
            }
            writeln!(s, "pass,{pass}").unwrap();
            s
        }
        Format::Text => {
            let mut s = format!(
                "r={r} lambda2={lambda2} m={m} p={p} weight space dimension {}\n",
                structure.dim
            );
            writeln!(
                s,
                "structure constants: {} products, {} mismatches, basis independent: {}, b({}) = 0: {}",
                structure.products_checked,
                structure.mismatches.len(),
                structure.independent,
                lambda2 + 1,
                structure.truncation_zero
            )
            .unwrap();
            if let Some(rk) = &ranks {
                for e in &rk.per_g {
                    writeln!(
                        s,
                        "e_{{{m},{}}}: rank {} idempotent {}",
                        e.g, e.rank, e.idempotent
                    )
                    .unwrap();
                }
                writeln!(s, "rank sum {} of {}", rk.rank_sum, rk.dim).unwrap();
            }
            writeln!(s, "{}", if pass { "PASS" } else { "FAIL" }).unwrap();
            s
        }
    };
    let mut failures = Vec::new();
    if !pass {
        failures.push(serde_json::to_string(&structure).expect("report serializes"));
        if let Some(rk) = &ranks {
            failures.push(serde_json::to_string(rk).expect("report serializes"));
        }
    }
    Ok(Outcome {
        body,
        pass,
        failures,
    })
}

pub fn blocks(m: u64, lambda2: usize, format: Format) -> Result<Outcome> {
    let ctx = f2(m, lambda2)?;
    let mut descriptions = Vec::new();
    let mut failures = Vec::new();
    for g in admissible_g(&ctx)? {
        let block = block_description(&ctx, g)?;
        let listed = block_basis_elements(&ctx, g)?;
        let rank = span_rank(&ctx, &listed);
        let spanned = block_dimension(&ctx, g)?;
        if rank != block.dimension || spanned != block.dimension {
            failures.push(format!(
                "g={g}: listed basis has rank {rank}, block has dimension {spanned}, expected {}",
                block.dimension
            ));
        }
        descriptions.push(block);
    }
    let total: usize = descriptions.iter().map(|b| b.dimension).sum();
    if total != ctx.dimension() {
        failures.push(format!(
            "block dimensions sum to {total}, algebra has dimension {}",
            ctx.dimension()
        ));
    }
    let body = match format {
        Format::Json => to_json(&json!({
            "m": m,
            "lambda2": lambda2,
            "r": ctx.r(),
            "blocks": descriptions,
            "dimension_sum": total,
            "algebra_dimension": ctx.dimension(),
        })),
        Format::Csv => {
            let mut s = String::from("g,basis_degrees,generator_degrees,dimension\n");
            for b in &descriptions {
                writeln!(
                    s,
                    "{},{},{},{}",
                    b.g,
                    list(&b.basis_degrees).replace(',', " "),
                    list(&b.generator_degrees).replace(',', " "),
                    b.dimension
                )
                .unwrap();
            }
            s
        }
        Format::Text => {
            let mut s = format!("m={m} lambda2={lambda2} r={}\n", ctx.r());
            for b in &descriptions {
                writeln!(
                    s,
                    "g={}: basis degrees [{}] generators [{}] dimension {}",
                    b.g,
                    list(&b.basis_degrees),
                    list(&b.generator_degrees),
                    b.dimension
                )
                .unwrap();
            }
            writeln!(s, "dimension sum {total} of {}", ctx.dimension()).unwrap();
            s
        }
    };
    Ok(Outcome {
        body,
        pass: failures.is_empty(),
        failures,
    })
}

pub fn char0(m: u64, lambda2: usize, format: Format) -> Result<Outcome> {
    let ctx = AlgebraContext::new(Rationals, m, lambda2)?;
    let identities = (1..=lambda2)
        .map(|k| char0_basis_identity(k, &ctx))
        .collect::<Result<Vec<_>>>()?;
    let minimal = minimal_polynomial_check(&ctx)?;
    let generates = powers_of_b1_independent(&ctx)?;
    let top = f_polynomial(lambda2 + 1, m)?;
    let pass = identities.iter().all(|&x| x) && minimal && generates;
    let body = match format {
        Format::Json => to_json(&json!({
            "m": m,
            "lambda2": lambda2,
            "identities": identities,
            "minimal_polynomial": minimal,
            "b1_generates": generates,
            "f": {
                "k": lambda2 + 1,
                "factored": top.factored(),
                "expanded": top.to_string(),
                "coeffs": top.coeffs.iter().map(ToString::to_string).collect::<Vec<_>>(),
            },
            "pass": pass,
        })),
        Format::Csv => {
            let mut s = String::from("check,value\n");
            for (k, ok) in identities.iter().enumerate() {
                writeln!(s, "identity_k{},{ok}", k + 1).unwrap();
            }
            writeln!(s, "minimal_polynomial,{minimal}").unwrap();
            writeln!(s, "b1_generates,{generates}").unwrap();
            writeln!(s, "F_{},{}", lambda2 + 1, top.factored()).unwrap();
            writeln!(s, "pass,{pass}").unwrap();
            s
        }
        Format::Text => {
            let mut s = format!("m={m} lambda2={lambda2} over Q\n");
            writeln!(s, "F_{}(T) = {} = {}", lambda2 + 1, top.factored(), top).unwrap();
            for (k, ok) in identities.iter().enumerate() {
                writeln!(s, "({}!)^2 b({}) = F_{}(b(1)): {ok}", k + 1, k + 1, k + 1).unwrap();
            }
            writeln!(
                s,
                "F_{}(b(1)) = 0 and no smaller F_k vanishes: {minimal}",
                lambda2 + 1
            )
            .unwrap();
            writeln!(s, "b(1) generates: {generates}").unwrap();
            writeln!(s, "{}", if pass { "PASS" } else { "FAIL" }).unwrap();
            s
        }
    };
    Ok(Outcome {
        body,
        pass,
        failures: if pass {
            Vec::new()
        } else {
            vec!["characteristic-zero identity failed".into()]
        },
    })
}
