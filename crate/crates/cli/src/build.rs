use std::sync::Arc;

use genfilter::boolean::{build_ba_iso, verify_ba_iso_prefix, BooleanAlgebra, ClopenAlgebra, IntervalAlgebra};
use genfilter::dlo::{build_order_iso, verify_order_iso_prefix, CountableDlo, Dyadics, Rationals};
use genfilter::graphs::{build_graph_iso, verify_graph_iso_prefix};
use genfilter::partialiso::{generic_query, generic_query_inverse, DomainSchedule, ImageSchedule};
use genfilter::{Report, Token};

use crate::{graph, recheck, BooleanName, Certificate, CliError, DloName, Kind};

#[derive(Debug, Clone, Copy)]
pub struct BuildOptions {
    /// Prefix length queried in both directions.
    pub steps: usize,
    /// Seed for sampled homomorphism pairs.
    pub seed: u64,
    pub bound: Option<u64>,
    /// Sampled pairs for the Boolean homomorphism check.
    pub pair_samples: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            steps: 100,
            seed: 0,
            bound: None,
            pair_samples: 1000,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QueryOptions {
    /// Largest builder stage the query may reach.
    pub steps_cap: usize,
    pub inverse: bool,
    pub bound: Option<u64>,
}

impl Default for QueryOptions {
    fn default() -> Self {
        QueryOptions {
            steps_cap: 1 << 20,
            inverse: false,
            bound: None,
        }
    }
}

/// Builds the isomorphism between two registered structures, verifies its
/// prefix of length `steps` both ways, and rechecks the resulting pairs
/// from the structure oracles alone.
pub fn build(kind: Kind, source: &str, target: &str, opts: &BuildOptions) -> Result<Certificate, CliError> {
    let (stage, pairs, report) = match kind {
        Kind::Dlo => {
            let (s, t) = (DloName::parse(source)?, DloName::parse(target)?);
            match (s, t) {
                (DloName::Rationals, DloName::Rationals) => build_dlo(Rationals, Rationals, opts),
                (DloName::Rationals, DloName::Dyadics) => build_dlo(Rationals, Dyadics, opts),
                (DloName::Dyadics, DloName::Rationals) => build_dlo(Dyadics, Rationals, opts),
                (DloName::Dyadics, DloName::Dyadics) => build_dlo(Dyadics, Dyadics, opts),
            }
        }
        Kind::Boolean => {
            let (s, t) = (BooleanName::parse(source)?, BooleanName::parse(target)?);
            match (s, t) {
                (BooleanName::Clopen, BooleanName::Clopen) => build_ba(ClopenAlgebra, ClopenAlgebra, opts),
                (BooleanName::Clopen, BooleanName::Interval) => build_ba(ClopenAlgebra, IntervalAlgebra, opts),
                (BooleanName::Interval, BooleanName::Clopen) => build_ba(IntervalAlgebra, ClopenAlgebra, opts),
                (BooleanName::Interval, BooleanName::Interval) => build_ba(IntervalAlgebra, IntervalAlgebra, opts),
            }
        }
        Kind::Graph => {
            let (s, t) = (graph(source, opts.bound)?, graph(target, opts.bound)?);
            let mut b = build_graph_iso(s, t, opts.bound);
            let report = verify_graph_iso_prefix(&mut b, opts.steps);
            (b.stage(), b.current().token_pairs(), report)
        }
    };
    let mut cert = Certificate {
        kind,
        source: source.to_string(),
        target: target.to_string(),
        stage,
        pairs,
        checks: report.checks,
    };
    let again = recheck(&cert, opts.bound)?;
    cert.checks.extend(again.checks);
    Ok(cert)
}

fn build_dlo<X, Y>(source: X, target: Y, opts: &BuildOptions) -> (usize, Vec<(String, String)>, Report)
where
    X: CountableDlo + 'static,
    Y: CountableDlo + 'static,
{
    let mut b = build_order_iso(Arc::new(source), Arc::new(target));
    let report = verify_order_iso_prefix(&mut b, opts.steps);
    (b.stage(), b.current().token_pairs(), report)
}

fn build_ba<A, B>(source: A, target: B, opts: &BuildOptions) -> (usize, Vec<(String, String)>, Report)
where
    A: BooleanAlgebra + 'static,
    B: BooleanAlgebra + 'static,
{
    let mut b = build_ba_iso(Arc::new(source), Arc::new(target));
    let report = verify_ba_iso_prefix(&mut b, opts.steps, opts.pair_samples, opts.seed);
    (b.stage(), b.current().token_pairs(), report)
}

/// The generic map (or its inverse) at one point, as a token.
pub fn query(kind: Kind, source: &str, target: &str, point: &str, opts: &QueryOptions) -> Result<String, CliError> {
    match kind {
        Kind::Dlo => {
            let (s, t) = (DloName::parse(source)?, DloName::parse(target)?);
            match (s, t) {
                (DloName::Rationals, DloName::Rationals) => query_dlo(Rationals, Rationals, point, opts),
                (DloName::Rationals, DloName::Dyadics) => query_dlo(Rationals, Dyadics, point, opts),
                (DloName::Dyadics, DloName::Rationals) => query_dlo(Dyadics, Rationals, point, opts),
                (DloName::Dyadics, DloName::Dyadics) => query_dlo(Dyadics, Dyadics, point, opts),
            }
        }
        Kind::Boolean => {
            let (s, t) = (BooleanName::parse(source)?, BooleanName::parse(target)?);
            match (s, t) {
                (BooleanName::Clopen, BooleanName::Clopen) => query_ba(ClopenAlgebra, ClopenAlgebra, point, opts),
                (BooleanName::Clopen, BooleanName::Interval) => query_ba(ClopenAlgebra, IntervalAlgebra, point, opts),
                (BooleanName::Interval, BooleanName::Clopen) => query_ba(IntervalAlgebra, ClopenAlgebra, point, opts),
                (BooleanName::Interval, BooleanName::Interval) => query_ba(IntervalAlgebra, IntervalAlgebra, point, opts),
            }
        }
        Kind::Graph => {
            let (s, t) = (graph(source, opts.bound)?, graph(target, opts.bound)?);
            let mut b = build_graph_iso(s, t, opts.bound);
            run_query(&mut b, point, opts)
        }
    }
}

fn query_dlo<X, Y>(source: X, target: Y, point: &str, opts: &QueryOptions) -> Result<String, CliError>
where
    X: CountableDlo + 'static,
    Y: CountableDlo + 'static,
{
    let mut b = build_order_iso(Arc::new(source), Arc::new(target));
    run_query(&mut b, point, opts)
}

fn query_ba<A, B>(source: A, target: B, point: &str, opts: &QueryOptions) -> Result<String, CliError>
where
    A: BooleanAlgebra + 'static,
    B: BooleanAlgebra + 'static,
{
    let mut b = build_ba_iso(Arc::new(source), Arc::new(target));
    run_query(&mut b, point, opts)
}

fn run_query<P, F>(b: &mut genfilter::GenericBuilder<P, F>, point: &str, opts: &QueryOptions) -> Result<String, CliError>
where
    P: genfilter::partialiso::PartialIsoPoset,
    F: genfilter::DenseFamily<P::Condition> + DomainSchedule<P::Source> + ImageSchedule<P::Target>,
{
    let parse_err = |e: genfilter::TokenError| CliError::Usage(e.to_string());
    let too_far = |stage: Option<usize>| match stage {
        Some(s) if s < opts.steps_cap => Ok(()),
        _ => Err(CliError::Usage(format!(
            "point {point:?} needs a stage beyond the cap {}",
            opts.steps_cap
        ))),
    };
    let answer = if opts.inverse {
        let y = P::Target::from_token(point).map_err(parse_err)?;
        too_far(b.family().image_stage(&y))?;
        generic_query_inverse(b, &y).map(|x| x.token())
    } else {
        let x = P::Source::from_token(point).map_err(parse_err)?;
        too_far(b.family().domain_stage(&x))?;
        generic_query(b, &x).map(|y| y.token())
    };
    answer.map_err(|e| CliError::Query(e.to_string()))
}
