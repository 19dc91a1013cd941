//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. The order-4 exhaustive run is opt-in through
//! `--ignored` or `--include-ignored`.

use std::process::ExitCode;
use std::time::Instant;

use quadfact_core::factor::{factor_theorem1, jordan_shuffle, squarezero_pair};
use quadfact_core::invariants::{fitting, n0, nilpotent_structure};
use quadfact_core::oracle::{
    cross_check_all, feasible_two_square_zero_spec, product_inequalities, random_instance,
    random_invertible, random_matrix, random_square_zero, random_target, EnumerationDomain,
    InvertiblePart, SeededRng,
};
use quadfact_core::{
    invariant_report, verify_witness, FactorSpec, FieldDescriptor, FieldScalar, Matrix,
};

type Outcome = Result<String, String>;

fn gf(p: u64) -> FieldDescriptor {
    FieldDescriptor::prime(p).unwrap()
}

fn q() -> FieldDescriptor {
    FieldDescriptor::rationals()
}

/// All nullity tuples of length `0..=max_len` with entries in `0..=n`.
fn nullity_tuples(n: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut frontier = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for t in &frontier {
            for v in 0..=n {
                let mut u: Vec<usize> = t.clone();
                u.push(v);
                next.push(u);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// All scalar tuples of the given length over the nonzero residues.
fn scalar_tuples(field: FieldDescriptor, len: usize) -> Vec<Vec<FieldScalar>> {
    let p = field.modulus().unwrap() as i64;
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (1..p).map(move |c| {
                    let mut u = t.clone();
                    u.push(field.from_i64(c));
                    u
                })
            })
            .collect();
    }
    out
}

fn exhaustive(dom: &EnumerationDomain, specs: &[FactorSpec]) -> Outcome {
    let results = cross_check_all(dom, specs).map_err(|e| e.to_string())?;
    let bad: usize = results.iter().map(Vec::len).sum();
    if bad == 0 {
        Ok(format!("{} specs over {} matrices", specs.len(), dom.size()))
    } else {
        let (i, m) = results
            .iter()
            .enumerate()
            .find_map(|(i, r)| r.first().map(|m| (i, m)))
            .unwrap();
        Err(format!(
            "{bad} mismatches; first: spec {:?} on {:?} (product set {}, decided {})",
            specs[i], m.matrix, m.in_product_set, m.decided_feasible
        ))
    }
}

fn two_square_zero_specs(field: FieldDescriptor, n: usize) -> Vec<FactorSpec> {
    let mut specs = Vec::new();
    for idem in nullity_tuples(n, 2) {
        for m1 in 0..=n {
            for m2 in 0..=n {
                specs.push(FactorSpec::two_square_zero(field, idem.clone(), m1, m2));
            }
        }
    }
    specs
}

fn criterion1(orders: &[usize]) -> Outcome {
    let mut notes = Vec::new();
    for &n in orders {
        let dom = EnumerationDomain::new(gf(2), n).map_err(|e| e.to_string())?;
        notes.push(format!("n={n}: {}", exhaustive(&dom, &two_square_zero_specs(gf(2), n))?));
    }
    Ok(notes.join("; "))
}

fn criterion2() -> Outcome {
    let mut notes = Vec::new();
    for p in [2, 3] {
        let field = gf(p);
        for n in 1..=3 {
            let dom = EnumerationDomain::new(field, n).map_err(|e| e.to_string())?;
            let mut specs = Vec::new();
            for idem in nullity_tuples(n, 2) {
                for scalars in scalar_tuples(field, idem.len()) {
                    let s = Some(scalars);
                    specs.push(FactorSpec::new(field, idem.clone(), s.clone(), vec![]).unwrap());
                    for m1 in 0..=n {
                        specs.push(FactorSpec::new(field, idem.clone(), s.clone(), vec![m1]).unwrap());
                    }
                }
            }
            exhaustive(&dom, &specs)?;
            notes.push(format!("GF({p}) n={n}: {} specs", specs.len()));
        }
    }
    Ok(notes.join(", "))
}

fn criterion3() -> Outcome {
    let mut rng = SeededRng::new(0x5eed_0003);
    let mut done = 0;
    let mut attempts = 0;
    while done < 1000 {
        attempts += 1;
        let field = if done % 2 == 0 { gf(5) } else { q() };
        let n = rng.range(1, 8);
        let target = random_target(&mut rng, n);
        let inst = random_instance(rng.next_u64(), field, n, &target).map_err(|e| e.to_string())?;
        let report = invariant_report(&inst.g).map_err(|e| e.to_string())?;
        let Some((idem, nz1, nz2)) = feasible_two_square_zero_spec(&mut rng, &report) else {
            continue;
        };
        let spec = FactorSpec::two_square_zero(field, idem.clone(), nz1, nz2);
        let decided = quadfact_core::decide(&inst.g, &spec).map_err(|e| e.to_string())?;
        if !decided.feasible {
            return Err(format!("sampled spec {spec:?} judged infeasible for {:?}", inst.g));
        }
        let w = factor_theorem1(&inst.g, &idem, nz1, nz2)
            .map_err(|e| format!("seed {}: {e}", inst.seed))?;
        if !verify_witness(&inst.g, &w).passed {
            return Err(format!("seed {}: witness failed verification", inst.seed));
        }
        done += 1;
    }
    Ok(format!("{done} witnesses verified ({attempts} draws)"))
}

fn criterion4() -> Outcome {
    let (e, f) = jordan_shuffle(2, q()).map_err(|e| e.to_string())?;
    if e != Matrix::from_i64(q(), 2, 2, &[0, 0, 1, 1]) || f != Matrix::from_i64(q(), 2, 2, &[1, 0, 0, 0]) {
        return Err(format!("jordan_shuffle(2) = {e:?}, {f:?}"));
    }
    for k in 2..=6 {
        let v = n0(&Matrix::jordan_block(q(), k)).map_err(|e| e.to_string())?;
        if v != 0 {
            return Err(format!("n0(J_{k}(0)) = {v}"));
        }
    }
    Ok("shuffle pair and n0(J_k(0)) for k = 2..6 exact".into())
}

fn criterion5() -> Outcome {
    let field = gf(5);
    let mut rng = SeededRng::new(0x5eed_0005);
    let mut hypothesis_cases = 0;
    for _ in 0..1000 {
        let n = rng.range(1, 8);
        // H close to I makes r(I - H) small and the rank bound tight
        let defect_rank = rng.range(0, n);
        let left = random_matrix(&mut rng, field, n, defect_rank);
        let right = random_matrix(&mut rng, field, defect_rank, n);
        let h = Matrix::identity(field, n).sub(&left.mul(&right).unwrap()).unwrap();
        let r1 = rng.range(0, n / 2);
        let r2 = rng.range(0, n / 2);
        let z1 = random_square_zero(&mut rng, field, n, r1).unwrap();
        let z2 = random_square_zero(&mut rng, field, n, r2).unwrap();
        let r = product_inequalities(&h, &z1, &z2).map_err(|e| e.to_string())?;
        if !r.all_hold() {
            return Err(format!("violation {r:?} for H={h:?} Z1={z1:?} Z2={z2:?}"));
        }
        hypothesis_cases += r.hypothesis_holds as usize;
    }
    Ok(format!("1000 triples, 0 violations ({hypothesis_cases} met the intersection hypothesis)"))
}

fn criterion6() -> Outcome {
    let field = gf(3);
    let mut rng = SeededRng::new(0x5eed_0006);
    let mut pairs = 0;
    let mut found = 0;
    while found < 200 {
        let n = rng.range(1, 6);
        let target = random_target(&mut rng, n);
        let rank = target.jordan_blocks.iter().map(|k| k - 1).sum::<usize>() + target.invertible.order();
        if rank > target.zero_blocks {
            continue;
        }
        let f = random_instance(rng.next_u64(), field, n, &target)
            .map_err(|e| e.to_string())?
            .g;
        found += 1;
        for r1 in rank..=n / 2 {
            for r2 in rank..=n / 2 {
                let (z1, z2) = squarezero_pair(&f, n - r1, n - r2)
                    .map_err(|e| format!("ranks ({r1}, {r2}) on {f:?}: {e}"))?;
                let ok = z1.is_square_zero()
                    && z2.is_square_zero()
                    && z1.rank() == r1
                    && z2.rank() == r2
                    && z1.mul(&z2).unwrap() == f;
                if !ok {
                    return Err(format!("ranks ({r1}, {r2}) on {f:?} gave a bad pair"));
                }
                pairs += 1;
            }
        }
    }
    Ok(format!("{found} matrices, {pairs} rank pairs verified"))
}

fn criterion7() -> Outcome {
    let mut rng = SeededRng::new(0x5eed_0007);
    for i in 0..500 {
        let field = if i % 2 == 0 { gf(5) } else { q() };
        let n = rng.range(1, 7);
        let target = random_target(&mut rng, n);
        let g = random_instance(rng.next_u64(), field, n, &target)
            .map_err(|e| e.to_string())?
            .g;
        let s = random_invertible(&mut rng, field, n);
        let c = rng.nonzero_scalar(field);
        let base = invariant_report(&g).map_err(|e| e.to_string())?;
        let similar = invariant_report(&Matrix::conjugate(&s, &g).unwrap()).unwrap();
        let scaled = invariant_report(&g.scale(&c).unwrap()).unwrap();
        if base != similar || base != scaled {
            return Err(format!("{base:?} vs {similar:?} vs {scaled:?} for {g:?}"));
        }
    }
    Ok("500 triples, reports identical".into())
}

fn criterion8() -> Outcome {
    let mut rng = SeededRng::new(0x5eed_0008);
    let mut max_bits = 0;
    for i in 0..500 {
        let n = rng.range(1, 6);
        let g = if i % 2 == 0 {
            random_matrix(&mut rng, q(), n, n)
        } else {
            let mut target = random_target(&mut rng, n);
            if i % 4 == 1 {
                let d = target.invertible.order();
                let values = (0..d).map(|_| rng.nonzero_scalar(q())).collect();
                target.invertible = InvertiblePart::Diagonal(values);
            }
            random_instance(rng.next_u64(), q(), n, &target)
                .map_err(|e| e.to_string())?
                .g
        };
        let fd = fitting(&g).map_err(|e| e.to_string())?;
        if Matrix::conjugate(&fd.transform, &fd.block_form()).unwrap() != g {
            return Err(format!("Fitting round trip failed for {g:?}"));
        }
        let ns = nilpotent_structure(&fd.nilpotent).map_err(|e| e.to_string())?;
        if Matrix::conjugate(&ns.transform, &ns.canonical()).unwrap() != fd.nilpotent {
            return Err(format!("Jordan round trip failed for {:?}", fd.nilpotent));
        }
        let bits = fd.transform.inverse().unwrap().entries().iter().map(|x| x.height_bits()).max();
        max_bits = max_bits.max(bits.unwrap_or(0));
    }
    Ok(format!("500 round trips exact (largest inverse entry height {max_bits} bits)"))
}

type Criterion = (&'static str, &'static str, Box<dyn Fn() -> Outcome>);

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let slow = args.iter().any(|a| a == "--ignored" || a == "--include-ignored");
    let listing = args.iter().any(|a| a == "--list");
    if listing {
        return ExitCode::SUCCESS;
    }

    let mut criteria: Vec<Criterion> = vec![
        ("1", "exhaustive two-square-zero equivalence, GF(2), n = 2, 3", Box::new(|| criterion1(&[2, 3]))),
        ("2", "exhaustive l = 0, 1 equivalence, GF(2) and GF(3), n <= 3", Box::new(criterion2)),
        ("3", "witness soundness on random feasible instances", Box::new(criterion3)),
        ("4", "golden shuffle pair and n0 of Jordan blocks", Box::new(criterion4)),
        ("5", "rank inequalities for G = H Z1 Z2", Box::new(criterion5)),
        ("6", "square-zero rank freedom", Box::new(criterion6)),
        ("7", "similarity and scaling invariance", Box::new(criterion7)),
        ("8", "Fitting and Jordan round trips over Q", Box::new(criterion8)),
    ];
    if slow {
        criteria.push(("1-slow", "exhaustive two-square-zero equivalence, GF(2), n = 4", Box::new(|| criterion1(&[4]))));
    }

    let mut failed = 0;
    for (id, name, run) in &criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {id}: PASS  {name} [{detail}] ({secs:.1}s)"),
            Err(why) => {
                failed += 1;
                println!("criterion {id}: FAIL  {name} [{why}] ({secs:.1}s)");
            }
        }
    }
    if !slow {
        println!("criterion 1-slow: SKIPPED (pass --include-ignored to run GF(2), n = 4)");
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
