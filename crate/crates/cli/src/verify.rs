//! The `verify` ledger: every cross-check the library can run at one `n+1`.

use std::fmt::Write as _;

use anyhow::Result;
use cyclohedra::arith::divisors;
use cyclohedra::census::{census_bruteforce, gamma_closed, gamma_reduction, CensusTable};
use cyclohedra::dihedral::orbit_decomposition;
use cyclohedra::equivariant::{
    character_table_bruteforce, cyclic_series, isotropy_types, stratum_hilbert_oracle, subring_hilbert_cyclic,
    subring_hilbert_dihedral_general, theorem_series, Stratum,
};
use cyclohedra::matchings::{
    ann_count, ann_count_by_b, evaluate_terms, fixed_by_reflection, format_terms, ann_table_general_printed,
    ann_table_printed, verify_beta_identity, MatchingKind,
};
use cyclohedra::nested::cyclohedron_face_count;
use cyclohedra::series::format_rational;
use cyclohedra::{cycle_graph, DihedralGroup, NestedSet, SubgroupDescriptor, TubeSystem};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::report::{check_enumerable, faces_report, series_report};
use crate::{Format, Options, Outcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

#[derive(Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub n_plus_1: usize,
    pub degree: usize,
    pub checks: Vec<Check>,
    pub passed: usize,
    pub failed: usize,
}

fn check(name: &str, failure: Option<String>, ok_detail: String) -> Check {
    match failure {
        None => Check { name: name.into(), status: Status::Pass, detail: ok_detail },
        Some(why) => Check { name: name.into(), status: Status::Fail, detail: why },
    }
}

fn info(name: &str, detail: String) -> Check {
    Check { name: name.into(), status: Status::Info, detail }
}

fn show(v: &[BigRational]) -> String {
    v.iter().map(format_rational).collect::<Vec<_>>().join(", ")
}

fn as_rationals(v: &[u64]) -> Vec<BigRational> {
    v.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect()
}

fn census_checks(m: usize, table: &CensusTable, bound: usize) -> Result<Vec<Check>> {
    let mut closed_fail = None;
    let mut sum_fail = None;
    let mut reduction_fail = None;
    for k in 1..m {
        let mut total = BigUint::from(0u32);
        for d in 1..=m {
            let e = table.entry(d, k);
            total += e.gamma;
            let closed = gamma_closed(m, d, k);
            if closed_fail.is_none() && (closed != BigUint::from(e.gamma) || e.alpha + e.beta != e.gamma) {
                closed_fail = Some(format!(
                    "n+1={m} d={d} k={k}: alpha={} beta={} gamma={} closed={closed}",
                    e.alpha, e.beta, e.gamma
                ));
            }
            if k % d == 0 && m.is_multiple_of(d) && reduction_fail.is_none() {
                let red = gamma_reduction(m, d, k, bound)?;
                if red != closed {
                    reduction_fail = Some(format!("n+1={m} d={d} k={k}: reduction={red} closed={closed}"));
                }
            }
        }
        let faces = cyclohedron_face_count(m - 1, k)?;
        if sum_fail.is_none() && total != faces {
            sum_fail = Some(format!("n+1={m} k={k}: sum of gamma={total}, faces={faces}"));
        }
    }
    Ok(vec![
        check("gamma-closed-form", closed_fail, "enumerated gamma = alpha + beta = Mobius closed form".into()),
        check("gamma-by-size", sum_fail, "sum over d of gamma(d,k) = C(n,k)C(n+k,k)".into()),
        check("gamma-reduction", reduction_fail, "gamma via the quotient cycle agrees".into()),
    ])
}

fn character_checks(m: usize, opts: &Options) -> Result<Vec<Check>> {
    let grp = DihedralGroup::new(m)?;
    let elements = grp.elements();
    let brute = character_table_bruteforce(m, &elements, opts.degree, opts.max_enum)?;
    let dec = theorem_series(m, opts.max_enum)?;
    let cyc = cyclic_series(m)?;
    let mut master = None;
    let mut rotations = None;
    for (g, counts) in &brute {
        let want = as_rationals(counts);
        let got = dec.evaluate(*g)?.expand(opts.degree);
        if master.is_none() && got != want {
            master = Some(format!("n+1={m} g={g}: series [{}], monomials [{}]", show(&got), show(&want)));
        }
        if !g.reflected {
            let got = cyc.evaluate(*g)?.expand(opts.degree);
            if rotations.is_none() && got != want {
                rotations = Some(format!("n+1={m} g={g}: series [{}], monomials [{}]", show(&got), show(&want)));
            }
        }
    }
    let d = opts.degree;
    Ok(vec![
        check("character-dihedral", master, format!("all {} elements agree through degree {d}", elements.len())),
        check("character-cyclic", rotations, format!("all {m} rotations agree through degree {d}")),
    ])
}

fn stratum_check(m: usize, opts: &Options) -> Result<Check> {
    let grp = DihedralGroup::new(m)?;
    let deg = opts.degree;
    let oracle = |rep: &NestedSet, h_order: usize, ks: &[SubgroupDescriptor]| -> Result<Vec<BigRational>> {
        let mut out = vec![BigRational::from_integer(0.into()); deg + 1];
        for k in ks {
            let counts = stratum_hilbert_oracle(rep, m, k, deg)?;
            for (o, c) in out.iter_mut().zip(counts) {
                *o += BigRational::new(BigInt::from(c * k.order() as u64), BigInt::from(h_order));
            }
        }
        Ok(out)
    };
    let types = isotropy_types(m, opts.max_enum)?;
    let mut compared = 0usize;
    for (ty, (_, rep)) in &types {
        if ty.k == 0 {
            continue;
        }
        let d = ty.d;
        for ell in divisors(d) {
            let cyc = SubgroupDescriptor::cyclic(m, ell)?;
            let mut pairs = Vec::new();
            match ty.dihedral {
                None => {
                    let got = subring_hilbert_cyclic(d, ty.k, ell)?.expand(deg);
                    pairs.push((format!("C_{ell}"), got, oracle(rep, d, &[cyc])?));
                }
                Some(lab) => {
                    let (a, ao, b) = (lab.a, lab.a_odd, lab.b);
                    let got = subring_hilbert_dihedral_general(d, a, ao, b, ell, Stratum::Cyclic)?.expand(deg);
                    pairs.push((format!("C_{ell}"), got, oracle(rep, 2 * d, &[cyc])?));
                    let dih: Vec<SubgroupDescriptor> = grp
                        .isotropy(rep)
                        .subgroups(m)
                        .into_iter()
                        .filter(|k| k.is_dihedral() && k.cyclic_order == ell)
                        .collect();
                    let kind = Stratum::Dihedral { parity: None };
                    let got = subring_hilbert_dihedral_general(d, a, ao, b, ell, kind)?.expand(deg);
                    pairs.push((format!("D_{ell}"), got, oracle(rep, 2 * d, &dih)?));
                }
            }
            for (what, got, want) in pairs {
                compared += 1;
                if got != want {
                    let dec = orbit_decomposition(rep, m)?;
                    return Ok(check(
                        "strata",
                        Some(format!(
                            "n+1={m} N={rep} d={d} a={} a_odd={} b={} stratum {what}: formula [{}], oracle [{}]",
                            dec.a,
                            dec.a_odd,
                            dec.b,
                            show(&got),
                            show(&want)
                        )),
                        String::new(),
                    ));
                }
            }
        }
    }
    Ok(check(
        "strata",
        None,
        format!("{compared} strata over {} isotropy types agree with monomial counts through degree {deg}", types.len() - 1),
    ))
}

fn beta_checks(m: usize, table: &CensusTable) -> Result<Vec<Check>> {
    let mut weighted = None;
    let mut printed_fails = Vec::new();
    for k in 1..m {
        let r = verify_beta_identity(table, k)?;
        if weighted.is_none() && !r.weighted_holds {
            weighted = Some(format!(
                "n+1={m} k={k}: sum d*beta={} but matchings give {}",
                r.weighted_beta_sum, r.rhs
            ));
        }
        if !r.printed_holds {
            printed_fails.push(format!("k={k} ({} vs {})", r.beta_sum, r.rhs));
        }
    }
    let printed = if printed_fails.is_empty() {
        "unweighted beta sum also equals the matching count for every k".to_string()
    } else {
        format!("unweighted beta sum differs from the matching count at {}", printed_fails.join(", "))
    };
    Ok(vec![
        check("beta-identity", weighted, "sum over d of d*beta(d,k) = matching count for every k".into()),
        info("beta-identity-unweighted", printed),
    ])
}

fn table_checks(m: usize) -> Result<Vec<Check>> {
    let h = MatchingKind::Type1.arc_count(m)?;
    let mut fail = None;
    let mut rows = 0;
    let mut later = Vec::new();
    for k in 1..m.min(6) {
        for a in (k % 2..=k).rev().step_by(2) {
            let b = (k - a) / 2;
            let count = BigUint::from(ann_count_by_b(m, k, b, MatchingKind::Type1)?);
            if k <= 3 {
                let Some(terms) = ann_table_general_printed(k, a).or_else(|| ann_table_printed(k, a)) else { continue };
                rows += 1;
                let value = evaluate_terms(&terms, h);
                if fail.is_none() && value != count {
                    fail = Some(format!("n+1={m} k={k} a={a}: {} = {value} at h={h}, enumerated {count}", format_terms(&terms)));
                }
            } else if let Some(terms) = ann_table_printed(k, a) {
                let value = evaluate_terms(&terms, h);
                if value != count {
                    later.push(format!("k={k} a={a}: {} = {value}, enumerated {count}", format_terms(&terms)));
                }
            }
        }
    }
    let mut out = vec![check("matching-table", fail, format!("{rows} rows with k <= 3 agree at h={h}"))];
    if !later.is_empty() {
        out.push(info("matching-table-k45", format!("printed rows off at h={h}: {}", later.join("; "))));
    }
    Ok(out)
}

fn bijection_check(m: usize) -> Result<Check> {
    let grp = DihedralGroup::new(m)?;
    let sys = TubeSystem::new(&cycle_graph(m)?);
    let mut kinds = vec![MatchingKind::Type1];
    if m.is_multiple_of(2) {
        kinds.push(MatchingKind::Type2);
    }
    let top = (m - 1).min(5);
    for &kind in &kinds {
        let refl = kind.reflection();
        for k in 1..=top {
            let mut want = Vec::new();
            sys.for_each(Some(k), |tubes| {
                if grp.fixes_tubes(refl, tubes) {
                    want.push(NestedSet::from_tubes_unchecked(tubes.to_vec()));
                }
            });
            want.sort();
            let got = fixed_by_reflection(m, k, refl)?;
            let mut distinct = got.clone();
            distinct.dedup();
            let count = ann_count(m, k, kind)?;
            if got != want || distinct.len() != got.len() || count as usize != got.len() {
                let missing = want.iter().find(|n| !got.contains(n)).map(|n| n.to_string());
                return Ok(check(
                    "matching-bijection",
                    Some(format!(
                        "n+1={m} {kind:?} k={k}: {} images ({} distinct), {} fixed sets; first missing {}",
                        got.len(),
                        distinct.len(),
                        want.len(),
                        missing.unwrap_or_else(|| "none".into())
                    )),
                    String::new(),
                ));
            }
        }
    }
    Ok(check(
        "matching-bijection",
        None,
        format!("matchings biject onto reflection-fixed nested sets for k <= {top}"),
    ))
}

pub fn verify_report(opts: &Options) -> Result<VerifyReport> {
    check_enumerable(opts)?;
    let m = opts.n_plus_1;
    let mut checks = Vec::new();

    let faces = faces_report(opts)?;
    let bad = faces.rows.iter().find(|r| !r.ok);
    let f: Vec<u64> = faces.rows.iter().map(|r| r.enumerated).collect();
    checks.push(check(
        "f-vector",
        bad.map(|r| format!("n+1={m} k={}: enumerated {}, closed form {}", r.k, r.enumerated, r.closed_form)),
        format!("f = {f:?}"),
    ));

    let table = census_bruteforce(m, opts.max_enum)?;
    checks.extend(census_checks(m, &table, opts.max_enum)?);

    let series = series_report(opts, false)?;
    checks.push(check(
        "poincare",
        (!series.poincare_matches_faces).then(|| format!("n+1={m}: {} is not the face series", series.poincare)),
        series.f_form.clone(),
    ));

    checks.extend(character_checks(m, opts)?);
    checks.push(stratum_check(m, opts)?);
    checks.extend(beta_checks(m, &table)?);
    checks.extend(table_checks(m)?);
    checks.push(bijection_check(m)?);

    let passed = checks.iter().filter(|c| c.status == Status::Pass).count();
    let failed = checks.iter().filter(|c| c.status == Status::Fail).count();
    Ok(VerifyReport { n_plus_1: m, degree: opts.degree, checks, passed, failed })
}

pub fn verify(opts: &Options) -> Result<Outcome> {
    let rep = verify_report(opts)?;
    let mut s = String::new();
    match opts.format {
        Format::Json => s = serde_json::to_string_pretty(&rep)? + "\n",
        Format::Csv => {
            s.push_str("check,status,detail\n");
            for c in &rep.checks {
                writeln!(s, "{},{:?},\"{}\"", c.name, c.status, c.detail.replace('"', "\"\""))?;
            }
        }
        Format::Text => {
            writeln!(s, "verify C_{} through degree {}", rep.n_plus_1, rep.degree)?;
            for c in &rep.checks {
                let tag = match c.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Info => "INFO",
                };
                writeln!(s, "{tag} {}: {}", c.name, c.detail)?;
            }
            writeln!(s, "{} passed, {} failed", rep.passed, rep.failed)?;
        }
    }
    Ok(Outcome { text: s, ok: rep.failed == 0 })
}
