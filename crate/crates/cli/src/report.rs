//! One report per subcommand, rendered as text, CSV or JSON.

use std::fmt::Write as _;

use anyhow::Result;
use cyclohedra::census::{census_levels, gamma_closed};
use cyclohedra::equivariant::{character_bruteforce, cyclic_series, f_vector_series, format_f_vector_form, theorem_series};
use cyclohedra::matchings::{ann_count_by_b, build_matching, enumerate_bead_arrangements, matching_to_nested, MatchingKind};
use cyclohedra::nested::cyclohedron_face_count;
use cyclohedra::series::format_rational;
use cyclohedra::{cycle_graph, f_vector, DihedralElement, DihedralGroup, Error, InducedDecomposition, RationalSeries};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::{need, Format, KindArg, Options, Outcome};

pub fn check_enumerable(opts: &Options) -> Result<()> {
    DihedralGroup::new(opts.n_plus_1)?;
    if opts.n_plus_1 > opts.max_enum {
        return Err(Error::ResourceLimit { what: "n+1", requested: opts.n_plus_1, limit: opts.max_enum }.into());
    }
    Ok(())
}

fn json<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
pub struct FaceRow {
    pub k: usize,
    pub enumerated: u64,
    pub closed_form: String,
    pub ok: bool,
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
pub struct FacesReport {
    pub n_plus_1: usize,
    pub rows: Vec<FaceRow>,
}

pub fn faces_report(opts: &Options) -> Result<FacesReport> {
    check_enumerable(opts)?;
    let m = opts.n_plus_1;
    let counts = f_vector(&cycle_graph(m)?).counts;
    let mut rows = Vec::new();
    for k in 0..m {
        if opts.k.is_some_and(|kk| kk != k) {
            continue;
        }
        let enumerated = counts.get(k).copied().unwrap_or(0);
        let closed = cyclohedron_face_count(m - 1, k)?;
        rows.push(FaceRow { k, enumerated, ok: closed == BigUint::from(enumerated), closed_form: closed.to_string() });
    }
    Ok(FacesReport { n_plus_1: m, rows })
}

pub fn faces(opts: &Options) -> Result<Outcome> {
    let rep = faces_report(opts)?;
    let ok = rep.rows.iter().all(|r| r.ok);
    let mut s = String::new();
    match opts.format {
        Format::Json => s = json(&rep)?,
        Format::Csv => {
            s.push_str("n_plus_1,k,enumerated,closed_form,ok\n");
            for r in &rep.rows {
                writeln!(s, "{},{},{},{},{}", rep.n_plus_1, r.k, r.enumerated, r.closed_form, r.ok)?;
            }
        }
        Format::Text => {
            writeln!(s, "C_{} nested sets by size", rep.n_plus_1)?;
            writeln!(s, "{:>3} {:>14} {:>14}  ok", "k", "enumerated", "C(n,k)C(n+k,k)")?;
            for r in &rep.rows {
                writeln!(s, "{:>3} {:>14} {:>14}  {}", r.k, r.enumerated, r.closed_form, if r.ok { "yes" } else { "NO" })?;
            }
        }
    }
    Ok(Outcome { text: s, ok })
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
pub struct CensusRow {
    pub d: usize,
    pub k: usize,
    pub alpha: u64,
    pub beta: u64,
    pub gamma: u64,
    pub gamma_closed: String,
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
pub struct BetaRow {
    pub d: usize,
    pub k: usize,
    pub a: usize,
    pub count: u64,
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
pub struct CensusReport {
    pub n_plus_1: usize,
    pub rows: Vec<CensusRow>,
    pub beta_by_a: Vec<BetaRow>,
}

pub fn census_report(opts: &Options) -> Result<CensusReport> {
    check_enumerable(opts)?;
    let m = opts.n_plus_1;
    let levels: Vec<usize> = match opts.k {
        Some(k) => vec![k],
        None => (0..m).collect(),
    };
    let table = census_levels(m, &levels, opts.max_enum)?;
    let keep = |d: usize, k: usize| opts.d.is_none_or(|x| x == d) && levels.contains(&k) && k > 0;
    let mut rows: Vec<CensusRow> = table
        .entries()
        .filter(|(&(d, k), e)| keep(d, k) && e.gamma > 0)
        .map(|(&(d, k), e)| CensusRow {
            d,
            k,
            alpha: e.alpha,
            beta: e.beta,
            gamma: e.gamma,
            gamma_closed: gamma_closed(m, d, k).to_string(),
        })
        .collect();
    rows.sort_by_key(|r| (r.k, r.d));
    let mut beta_by_a: Vec<BetaRow> = table
        .beta_a_entries()
        .filter(|(&(d, k, _), &c)| keep(d, k) && c > 0)
        .map(|(&(d, k, a), &count)| BetaRow { d, k, a, count })
        .collect();
    beta_by_a.sort_by_key(|r| (r.k, r.d, r.a));
    Ok(CensusReport { n_plus_1: m, rows, beta_by_a })
}

pub fn census(opts: &Options) -> Result<Outcome> {
    let rep = census_report(opts)?;
    let ok = rep.rows.iter().all(|r| r.gamma.to_string() == r.gamma_closed && r.alpha + r.beta == r.gamma);
    let mut s = String::new();
    match opts.format {
        Format::Json => s = json(&rep)?,
        Format::Csv => {
            s.push_str("n_plus_1,d,k,alpha,beta,gamma\n");
            for r in &rep.rows {
                writeln!(s, "{},{},{},{},{},{}", rep.n_plus_1, r.d, r.k, r.alpha, r.beta, r.gamma)?;
            }
        }
        Format::Text => {
            writeln!(s, "isotropy census of C_{}", rep.n_plus_1)?;
            writeln!(s, "{:>3} {:>3} {:>12} {:>12} {:>12} {:>12}", "k", "d", "alpha", "beta", "gamma", "closed")?;
            for r in &rep.rows {
                writeln!(s, "{:>3} {:>3} {:>12} {:>12} {:>12} {:>12}", r.k, r.d, r.alpha, r.beta, r.gamma, r.gamma_closed)?;
            }
            if !rep.beta_by_a.is_empty() {
                writeln!(s, "beta(d, k, a)")?;
                for r in &rep.beta_by_a {
                    writeln!(s, "{:>3} {:>3} {:>3} {:>12}", r.k, r.d, r.a, r.count)?;
                }
            }
        }
    }
    Ok(Outcome { text: s, ok })
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
pub struct SeriesReport {
    pub decomposition: InducedDecomposition,
    pub poincare: RationalSeries,
    pub f_form: String,
    pub coefficients: Vec<String>,
    pub poincare_matches_faces: bool,
}

pub fn series_report(opts: &Options, cyclic: bool) -> Result<SeriesReport> {
    let m = opts.n_plus_1;
    let decomposition = if cyclic {
        cyclic_series(m)?
    } else {
        check_enumerable(opts)?;
        theorem_series(m, opts.max_enum)?
    };
    let poincare = decomposition.poincare()?;
    let f: Vec<BigUint> = (0..m).map(|k| cyclohedron_face_count(m - 1, k)).collect::<cyclohedra::Result<_>>()?;
    let coefficients = poincare.expand(opts.degree).iter().map(format_rational).collect();
    Ok(SeriesReport {
        poincare_matches_faces: poincare == f_vector_series(m)?,
        decomposition,
        poincare,
        f_form: format_f_vector_form(&f),
        coefficients,
    })
}

pub fn series(opts: &Options, cyclic: bool) -> Result<Outcome> {
    let rep = series_report(opts, cyclic)?;
    let m = rep.decomposition.n_plus_1;
    let mut s = String::new();
    match opts.format {
        Format::Json => s = json(&rep)?,
        Format::Csv => {
            s.push_str("subgroup,cyclic_order,reflection,series\n");
            writeln!(s, "1,,,{}", rep.decomposition.constant)?;
            for (h, ser) in &rep.decomposition.terms {
                let r = h.reflection.map(|r| r.to_string()).unwrap_or_default();
                writeln!(s, "{},{},{},{}", h.label(m), h.cyclic_order, r, ser)?;
            }
        }
        Format::Text => {
            let group = if cyclic { "C" } else { "D" };
            writeln!(s, "group : {group}_{m}")?;
            writeln!(s, "constant : {}", rep.decomposition.constant)?;
            for (h, ser) in &rep.decomposition.terms {
                writeln!(s, "Ind[{}] : {}", h.label(m), ser)?;
            }
            writeln!(s, "poincare : {}", rep.poincare)?;
            writeln!(s, "f-form : {}", rep.f_form)?;
            writeln!(s, "coefficients : {}", rep.coefficients.join(", "))?;
            writeln!(s, "poincare = f-form : {}", if rep.poincare_matches_faces { "yes" } else { "NO" })?;
        }
    }
    Ok(Outcome { text: s, ok: rep.poincare_matches_faces })
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
pub struct CharacterReport {
    pub n_plus_1: usize,
    pub element: String,
    pub series: RationalSeries,
    pub decomposition: Vec<String>,
    pub bruteforce: Vec<u64>,
    pub matches: bool,
}

pub fn character_report(opts: &Options) -> Result<CharacterReport> {
    check_enumerable(opts)?;
    let m = opts.n_plus_1;
    let text = need(opts.element.as_deref(), "element")?;
    let g = DihedralElement::parse(text, m)?;
    let bruteforce = character_bruteforce(m, g, opts.degree, opts.max_enum)?;
    let series = theorem_series(m, opts.max_enum)?.evaluate(g)?;
    let expanded = series.expand(opts.degree);
    let matches = expanded.len() == bruteforce.len()
        && expanded.iter().zip(&bruteforce).all(|(a, &b)| a.is_integer() && a.to_integer() == b.into());
    Ok(CharacterReport {
        n_plus_1: m,
        element: g.to_string(),
        series,
        decomposition: expanded.iter().map(format_rational).collect(),
        bruteforce,
        matches,
    })
}

pub fn character(opts: &Options) -> Result<Outcome> {
    let rep = character_report(opts)?;
    let mut s = String::new();
    match opts.format {
        Format::Json => s = json(&rep)?,
        Format::Csv => {
            s.push_str("degree,bruteforce,decomposition\n");
            for (i, (b, d)) in rep.bruteforce.iter().zip(&rep.decomposition).enumerate() {
                writeln!(s, "{i},{b},{d}")?;
            }
        }
        Format::Text => {
            writeln!(s, "element : {}", rep.element)?;
            writeln!(s, "series : {}", rep.series)?;
            writeln!(s, "decomposition : {}", rep.decomposition.join(", "))?;
            writeln!(s, "bruteforce : {}", join(&rep.bruteforce))?;
            writeln!(s, "match : {}", if rep.matches { "yes" } else { "NO" })?;
        }
    }
    Ok(Outcome { text: s, ok: rep.matches })
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
pub struct MatchingRow {
    pub kind: String,
    pub word: String,
    pub brackets: String,
    pub a: usize,
    pub b: usize,
    pub nested: String,
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
pub struct MatchingCount {
    pub n_plus_1: usize,
    pub k: usize,
    pub b: usize,
    pub kind: String,
    pub count: u64,
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
pub struct MatchingsReport {
    pub n_plus_1: usize,
    pub matchings: Vec<MatchingRow>,
    pub counts: Vec<MatchingCount>,
}

fn kind_name(kind: MatchingKind) -> &'static str {
    match kind {
        MatchingKind::Type1 => "type1",
        MatchingKind::Type2 => "type2",
    }
}

fn kinds(opts: &Options) -> Vec<MatchingKind> {
    match opts.kind {
        KindArg::One(k) => vec![k],
        KindArg::Both if opts.n_plus_1.is_multiple_of(2) => vec![MatchingKind::Type1, MatchingKind::Type2],
        KindArg::Both => vec![MatchingKind::Type1],
    }
}

pub fn matchings_report(opts: &Options) -> Result<MatchingsReport> {
    let m = opts.n_plus_1;
    check_enumerable(opts)?;
    let ks: Vec<usize> = match opts.k {
        Some(k) => vec![k],
        None => (1..m).collect(),
    };
    let mut matchings = Vec::new();
    let mut counts = Vec::new();
    for kind in kinds(opts) {
        kind.arc_count(m)?;
        for &k in &ks {
            for b in 0..=k / 2 {
                let count = ann_count_by_b(m, k, b, kind)?;
                counts.push(MatchingCount { n_plus_1: m, k, b, kind: kind_name(kind).into(), count });
            }
            if opts.k.is_none() {
                continue;
            }
            for arr in enumerate_bead_arrangements(m, k, kind)? {
                let mm = build_matching(&arr);
                matchings.push(MatchingRow {
                    kind: kind_name(kind).into(),
                    word: arr.to_string(),
                    brackets: mm.bracket_sequence(),
                    a: mm.a(),
                    b: mm.b(),
                    nested: matching_to_nested(&mm).to_string(),
                });
            }
        }
    }
    Ok(MatchingsReport { n_plus_1: m, matchings, counts })
}

pub fn matchings(opts: &Options) -> Result<Outcome> {
    let rep = matchings_report(opts)?;
    let mut s = String::new();
    match opts.format {
        Format::Json => s = json(&rep)?,
        Format::Csv => {
            s.push_str("n_plus_1,k,b,kind,count\n");
            for c in &rep.counts {
                writeln!(s, "{},{},{},{},{}", c.n_plus_1, c.k, c.b, c.kind, c.count)?;
            }
        }
        Format::Text => {
            for r in &rep.matchings {
                writeln!(s, "{}  {}  {}  a={} b={}  {}", r.kind, r.word, r.brackets, r.a, r.b, r.nested)?;
            }
            if !rep.matchings.is_empty() {
                s.push('\n');
            }
            writeln!(s, "{:>6} {:>3} {:>3} {:>10}", "kind", "k", "b", "count")?;
            for c in &rep.counts {
                writeln!(s, "{:>6} {:>3} {:>3} {:>10}", c.kind, c.k, c.b, c.count)?;
            }
        }
    }
    Ok(Outcome { text: s, ok: true })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{verify_report, VerifyReport};
    use serde::de::DeserializeOwned;
    use std::fmt::Debug;

    fn opts(n_plus_1: usize, k: Option<usize>) -> Options {
        Options {
            n_plus_1,
            k,
            d: None,
            degree: 6,
            element: Some("s1t".into()),
            kind: KindArg::Both,
            format: Format::Json,
            threads: 0,
            max_enum: 12,
        }
    }

    fn round_trip<T: Serialize + DeserializeOwned + PartialEq + Debug>(x: T) {
        let text = serde_json::to_string(&x).unwrap();
        assert_eq!(serde_json::from_str::<T>(&text).unwrap(), x);
    }

    #[test]
    fn reports_round_trip_through_json() {
        for m in [4, 6, 7] {
            let o = opts(m, Some(3));
            round_trip(faces_report(&o).unwrap());
            round_trip(census_report(&o).unwrap());
            round_trip(series_report(&o, false).unwrap());
            round_trip(series_report(&o, true).unwrap());
            round_trip(character_report(&o).unwrap());
            round_trip(matchings_report(&o).unwrap());
            round_trip::<VerifyReport>(verify_report(&opts(m, None)).unwrap());
        }
    }

    #[test]
    fn kind_flag_parses() {
        assert_eq!("both".parse::<KindArg>(), Ok(KindArg::Both));
        assert_eq!("2".parse::<KindArg>(), Ok(KindArg::One(MatchingKind::Type2)));
        assert!("3".parse::<KindArg>().is_err());
    }
}
