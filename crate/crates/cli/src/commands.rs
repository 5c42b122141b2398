use clap::ValueEnum;
use dcurve_core::curve::{
    fmt_fraction, fmt_order, ideal_membership_linear, implicitize_poly, implicitize_rational,
    improper_reason, inversion, is_unirational, ldcp, mobius_apply, order_relation_check,
    proper_check_poly, proper_check_rational, verify_on_curve, GeneralRationalParam, LinearCurve,
    LinearRationalParam,
};
use dcurve_core::ore::{ele, gcld, gcrd, lcrm, wronskian};
use dcurve_core::parse::{parse_diffpoly, parse_operator, parse_param, parse_scalar};
use dcurve_core::resultant::{build_resultant_matrix_in, diff_resultant_in};
use dcurve_core::{DiffPoly, Error, Order, OreOp, ScalarRat};
use serde_json::{json, Value};

use crate::render::factored;
use crate::{Context, Failure, Verb};

pub struct Report {
    /// Canonical printed forms of the parsed arguments.
    pub inputs: Vec<String>,
    pub text: String,
    pub result: Value,
    pub witness: Value,
}

impl Report {
    pub fn to_json(&self, verb: Verb) -> String {
        let name = verb.to_possible_value().map(|v| v.get_name().to_string());
        json!({
            "verb": name,
            "inputs": self.inputs,
            "result": self.result,
            "witness": self.witness,
        })
        .to_string()
    }
}

fn arity<'a, const N: usize>(verb: Verb, args: &'a [String]) -> Result<[&'a str; N], Failure> {
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    refs.try_into().map_err(|v: Vec<&str>| {
        Failure::input(format!(
            "{} expects {N} argument{}, got {}",
            verb_name(verb),
            if N == 1 { "" } else { "s" },
            v.len()
        ))
    })
}

fn verb_name(verb: Verb) -> String {
    verb.to_possible_value()
        .map(|v| v.get_name().to_string())
        .unwrap_or_default()
}

fn op(s: &str, ctx: &Context) -> Result<OreOp, Failure> {
    Ok(parse_operator(s, ctx.opts)?)
}

fn poly(s: &str, ctx: &Context) -> Result<DiffPoly, Failure> {
    Ok(parse_diffpoly(s, ctx.opts)?)
}

fn scalar(s: &str, ctx: &Context) -> Result<ScalarRat, Failure> {
    Ok(parse_scalar(s, ctx.opts)?)
}

fn curve(s: &str, ctx: &Context) -> Result<LinearCurve, Failure> {
    Ok(LinearCurve::from_diffpoly(&poly(s, ctx)?)?)
}

fn general_param(s: &str, ctx: &Context) -> Result<GeneralRationalParam, Failure> {
    let (x, y) = parse_param(s, ctx.opts)?;
    Ok(GeneralRationalParam::new(x, y)?)
}

fn linear_param(s: &str, ctx: &Context) -> Result<LinearRationalParam, Failure> {
    let (x, y) = parse_param(s, ctx.opts)?;
    Ok(LinearRationalParam::new(x, y)?)
}

fn order(s: &str) -> Result<Order, Failure> {
    match s.trim() {
        "-inf" => Ok(None),
        t => t.parse::<usize>().map(Some).map_err(|_| {
            Failure::input(format!(
                "expected an order (integer >= 0 or -inf), got `{t}`"
            ))
        }),
    }
}

fn order_json(o: Order) -> Value {
    o.map_or_else(|| json!("-inf"), |k| json!(k))
}

fn report(
    inputs: Vec<String>,
    text: String,
    result: Value,
    witness: Value,
) -> Result<Report, Failure> {
    Ok(Report {
        inputs,
        text,
        result,
        witness,
    })
}

pub fn dispatch(verb: Verb, args: &[String], ctx: &Context) -> Result<Report, Failure> {
    match verb {
        Verb::Gcld | Verb::Gcrd | Verb::Lcrm => {
            let [a, b] = arity(verb, args)?;
            let (l1, l2) = (op(a, ctx)?, op(b, ctx)?);
            let r = match verb {
                Verb::Gcld => gcld(&l1, &l2)?,
                Verb::Gcrd => gcrd(&l1, &l2)?,
                _ => lcrm(&l1, &l2)?,
            };
            report(
                vec![l1.to_string(), l2.to_string()],
                r.to_string(),
                json!(r.to_string()),
                Value::Null,
            )
        }
        Verb::Ele => {
            let [a, b] = arity(verb, args)?;
            let (l1, l2) = (op(a, ctx)?, op(b, ctx)?);
            let e = ele(&l1, &l2)?;
            let fields = [
                ("r_last", &e.r_last),
                ("a_n", &e.a_n),
                ("b_n", &e.b_n),
                ("a_prev", &e.a_prev),
                ("b_prev", &e.b_prev),
            ];
            let text = fields
                .iter()
                .map(|(k, v)| format!("{k} = {v}"))
                .collect::<Vec<_>>()
                .join("\n");
            let result: serde_json::Map<String, Value> = fields
                .iter()
                .map(|(k, v)| (k.to_string(), json!(v.to_string())))
                .collect();
            let quotients: Vec<String> = e.quotients.iter().map(ToString::to_string).collect();
            report(
                vec![l1.to_string(), l2.to_string()],
                text,
                Value::Object(result),
                json!({ "quotients": quotients }),
            )
        }
        Verb::Resultant => {
            let [a, b] = arity(verb, args)?;
            let (f1, f2) = (poly(a, ctx)?, poly(b, ctx)?);
            let size = build_resultant_matrix_in(&f1, &f2, ctx.var)?.size();
            let r = diff_resultant_in(&f1, &f2, ctx.var)?;
            let shown = factored(&r);
            report(
                vec![f1.to_string(), f2.to_string()],
                shown.clone(),
                json!(r.to_string()),
                json!({ "factored": shown, "matrix_size": size, "var": ctx.var.name() }),
            )
        }
        Verb::Parametrize => {
            let [a] = arity(verb, args)?;
            let c = curve(a, ctx)?;
            let inputs = vec![c.to_string()];
            match ldcp(&c) {
                Some(p) => report(
                    inputs,
                    p.to_string(),
                    json!({ "unirational": true, "parametrization": p.to_string() }),
                    json!({ "gcld": "1", "orders": [order_json(p.m1()), order_json(p.m2())] }),
                ),
                None => {
                    let (_, g) = is_unirational(&c);
                    report(
                        inputs,
                        format!("not unirational; gcld = {g}"),
                        json!({ "unirational": false, "parametrization": null }),
                        json!({ "gcld": g.to_string() }),
                    )
                }
            }
        }
        Verb::Implicitize => {
            let [a] = arity(verb, args)?;
            let p = linear_param(a, ctx)?;
            let inputs = vec![p.to_string()];
            if p.is_polynomial() {
                let c = implicitize_poly(&p)?;
                report(inputs, c.to_string(), json!(c.to_string()), Value::Null)
            } else {
                let imp = implicitize_rational(&p)?;
                report(
                    inputs,
                    format!("f_l = {}", imp.f_l),
                    json!(imp.f_l.to_string()),
                    json!({ "f_prev": imp.f_prev.to_string(), "resultant": imp.resultant.to_string() }),
                )
            }
        }
        Verb::Proper => {
            let [a] = arity(verb, args)?;
            let p = linear_param(a, ctx)?;
            let inputs = vec![p.to_string()];
            if p.m1().is_some() && p.m2().is_some() {
                let r = proper_check_rational(&p)?;
                let text = if r.proper {
                    "proper".to_string()
                } else {
                    format!("improper: {}", improper_reason(&r))
                };
                report(
                    inputs,
                    text,
                    json!(r.proper),
                    json!({
                        "resultant": r.resultant.to_string(),
                        "ord_x": order_json(r.ord_x),
                        "ord_y": order_json(r.ord_y),
                        "expected": [order_json(r.expected.0), order_json(r.expected.1)],
                    }),
                )
            } else if p.is_polynomial() {
                let proper = proper_check_poly(&p)?;
                let text = if proper {
                    "proper"
                } else {
                    "improper: gcrd of the operator parts is not 1"
                };
                report(inputs, text.to_string(), json!(proper), Value::Null)
            } else {
                Err(Error::Precondition(
                    "a constant coordinate needs a polynomial parametrization".into(),
                )
                .into())
            }
        }
        Verb::Invert => {
            let [a] = arity(verb, args)?;
            let p = linear_param(a, ctx)?;
            let (n, d) = inversion(&p)?;
            let shown = fmt_fraction(&(n.clone(), d.clone()));
            report(
                vec![p.to_string()],
                format!("u = {shown}"),
                json!({ "numer": n.to_string(), "denom": d.to_string() }),
                Value::Null,
            )
        }
        Verb::Verify => {
            let [a, b] = arity(verb, args)?;
            let (f, p) = (poly(a, ctx)?, general_param(b, ctx)?);
            let ok = verify_on_curve(&f, &p);
            let text = if ok { "on curve" } else { "not on curve" };
            report(
                vec![f.to_string(), p.to_string()],
                text.to_string(),
                json!(ok),
                Value::Null,
            )
        }
        Verb::Mobius => {
            let [p, a, b, c, d] = arity(verb, args)?;
            let p = general_param(p, ctx)?;
            let [a, b, c, d] = [a, b, c, d].map(|s| scalar(s, ctx));
            let (a, b, c, d) = (a?, b?, c?, d?);
            let q = mobius_apply(&p, &a, &b, &c, &d)?;
            let mut inputs = vec![p.to_string()];
            inputs.extend([&a, &b, &c, &d].map(ToString::to_string));
            report(inputs, q.to_string(), json!(q.to_string()), Value::Null)
        }
        Verb::Wronskian => {
            let elems = args
                .iter()
                .map(|s| scalar(s, ctx))
                .collect::<Result<Vec<_>, _>>()?;
            let w = wronskian(&elems)?;
            report(
                elems.iter().map(ToString::to_string).collect(),
                w.to_string(),
                json!(w.to_string()),
                Value::Null,
            )
        }
        Verb::Membership => {
            let [a, b] = arity(verb, args)?;
            let (ca, cb) = (curve(a, ctx)?, curve(b, ctx)?);
            let inputs = vec![ca.to_string(), cb.to_string()];
            let unirational = is_unirational(&ca).0;
            match ideal_membership_linear(&ca, &cb) {
                Some(d) => report(
                    inputs,
                    format!("member: A = D(B) with D = {d}"),
                    json!({ "member": true, "d": d.to_string() }),
                    json!({ "a_unirational": unirational }),
                ),
                None => report(
                    inputs,
                    "not a member".to_string(),
                    json!({ "member": false, "d": null }),
                    json!({ "a_unirational": unirational }),
                ),
            }
        }
        Verb::OrderCheck => {
            let [f, m1, m2] = arity(verb, args)?;
            let f = poly(f, ctx)?;
            let (m1, m2) = (order(m1)?, order(m2)?);
            let ok = order_relation_check(&f, m1, m2);
            let text = if ok { "holds" } else { "fails" };
            report(
                vec![f.to_string(), fmt_order(m1), fmt_order(m2)],
                text.to_string(),
                json!(ok),
                json!({ "ord_x": order_json(f.order_in(dcurve_core::Indet::X)), "ord_y": order_json(f.order_in(dcurve_core::Indet::Y)) }),
            )
        }
    }
}
