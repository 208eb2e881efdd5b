use std::fmt::Write as _;

use layered_core::calculus::{antiderivative, derivative, discriminant, is_separable};
use layered_core::factor::primary_decomposition;
use layered_core::layermap::{corner_locus_on_grid, grid_scan, write_csv};
use layered_core::resultant::{layer_permanent, layer_sylvester, resultant, sylvester};
use layered_core::sort::truncate_layer;
use layered_core::text::{
    format_poly, format_scalar, parse_layer, parse_multi, parse_poly, parse_rational, parse_scalar,
};
use layered_core::{
    AxisRange, Error, Layer, LayeredPoly, LayeredScalar, MultiPoly, PrimaryDecomposition, Rational,
    Result, SortKind,
};
use serde_json::{json, Value};

use crate::Command;

pub struct Output {
    pub text: String,
    pub json: Value,
}

fn line(text: String, json: Value) -> Output {
    Output {
        text: text + "\n",
        json,
    }
}

fn scalar_text(x: &Option<LayeredScalar>) -> String {
    x.as_ref().map_or_else(|| "_".to_string(), format_scalar)
}

fn poly_json(f: &LayeredPoly) -> Value {
    f.terms()
        .map(|(e, c)| json!([e, c.value.to_string(), c.layer.to_string()]))
        .collect()
}

fn poly_in(text: &str, sort: SortKind) -> Result<LayeredPoly> {
    let f = parse_poly(text)?;
    f.validate(sort)?;
    Ok(f)
}

fn multi_in(text: &str, arity: usize, sort: SortKind) -> Result<MultiPoly> {
    let f = parse_multi(text, Some(arity))?;
    f.terms().try_for_each(|(_, c)| sort.check(&c.layer))?;
    Ok(f)
}

fn list<T>(text: &str, item: impl Fn(&str) -> Result<T>) -> Result<Vec<T>> {
    text.split(',').map(|s| item(s.trim())).collect()
}

fn axis(text: &str) -> Result<AxisRange> {
    let parts: Vec<&str> = text.split(':').collect();
    let [a, b, step] = parts.as_slice() else {
        return Err(Error::Parse {
            position: 0,
            message: format!("axis `{text}` must be start:end:step"),
        });
    };
    AxisRange::new(
        parse_rational(a)?,
        parse_rational(b)?,
        parse_rational(step)?,
    )
}

pub fn run(cmd: &Command, sort: SortKind) -> Result<Output> {
    match cmd {
        Command::Eval { poly, point } => {
            let f = poly_in(poly, sort)?;
            let x = parse_scalar(point)?;
            sort.check(&x.layer)?;
            let y = f.eval(&x, sort);
            let s = scalar_text(&y);
            Ok(line(s.clone(), json!({ "value": s })))
        }
        Command::Factor { poly } => factor(&poly_in(poly, sort)?, sort),
        Command::Roots { poly } => roots(&poly_in(poly, sort)?),
        Command::Resultant { f, g, explain } => {
            let (f, g) = (poly_in(f, sort)?, poly_in(g, sort)?);
            resultant_cmd(&f, &g, sort, *explain)
        }
        Command::Derivative { poly } => {
            let d = derivative(&poly_in(poly, sort)?, sort);
            Ok(line(format_poly(&d), json!({ "poly": poly_json(&d) })))
        }
        Command::Integrate { poly } => {
            let d = antiderivative(&poly_in(poly, sort)?, sort)?;
            Ok(line(format_poly(&d), json!({ "poly": poly_json(&d) })))
        }
        Command::Discriminant { poly } => {
            let s = scalar_text(&discriminant(&poly_in(poly, sort)?, sort)?);
            Ok(line(s.clone(), json!({ "value": s })))
        }
        Command::Separable { poly } => {
            let yes = is_separable(&poly_in(poly, sort)?, sort)?;
            Ok(line(yes.to_string(), json!({ "separable": yes })))
        }
        Command::Layermap {
            polys,
            region,
            layers,
            locus,
        } => layermap(polys, region, layers.as_deref(), *locus, sort),
        Command::Truncate { layer, q } => {
            let t = truncate_layer(&parse_layer(layer)?, &parse_layer(q)?)?;
            Ok(line(t.to_string(), json!({ "layer": t.to_string() })))
        }
        Command::ConjectureSearch {
            max_degree,
            max_layer,
            root,
            limit,
        } => conjecture_search(
            *max_degree,
            *max_layer,
            &parse_rational(root)?,
            *limit,
            sort,
        ),
    }
}

fn factor(f: &LayeredPoly, sort: SortKind) -> Result<Output> {
    let d: PrimaryDecomposition = primary_decomposition(f, sort)?;
    let mut text = format!("unit: {}\n", format_scalar(&d.unit));
    if d.lambda_power > 0 {
        writeln!(text, "lambda power: {}", d.lambda_power).unwrap();
    }
    for p in &d.factors {
        writeln!(
            text,
            "{}  [root {}, degree {}]",
            format_poly(&p.poly),
            p.root,
            p.degree
        )
        .unwrap();
    }
    if d.promoted_sort {
        writeln!(text, "layers promoted to {}", d.sort).unwrap();
    }
    let factors: Vec<Value> = d
        .factors
        .iter()
        .map(|p| json!({ "root": p.root.to_string(), "degree": p.degree, "poly": poly_json(&p.poly) }))
        .collect();
    let json = json!({
        "unit": format_scalar(&d.unit),
        "factors": factors,
        "promoted_sort": d.promoted_sort,
        "lambda_power": d.lambda_power,
        "sort": d.sort.to_string(),
    });
    Ok(Output { text, json })
}

fn roots(f: &LayeredPoly) -> Result<Output> {
    let u = f.lowest_exponent().ok_or(Error::ZeroPolynomial("roots"))?;
    let runs = f.unshift(u).full_form().slopes()?;
    let mut text = String::new();
    if u > 0 {
        writeln!(text, "-inf multiplicity {u}").unwrap();
    }
    for r in &runs {
        writeln!(text, "{} multiplicity {}", r.root, r.len()).unwrap();
    }
    let roots: Vec<Value> = runs
        .iter()
        .map(|r| json!({ "root": r.root.to_string(), "multiplicity": r.len() }))
        .collect();
    Ok(Output {
        text,
        json: json!({ "lambda_power": u, "roots": roots }),
    })
}

fn resultant_cmd(
    f: &LayeredPoly,
    g: &LayeredPoly,
    sort: SortKind,
    explain: bool,
) -> Result<Output> {
    let r = scalar_text(&resultant(f, g, sort)?);
    let mut text = format!("{r}\n");
    let mut json = json!({ "value": r });
    if explain && f.degree() != Some(0) && g.degree() != Some(0) {
        let m = sylvester(f, g)?;
        write!(text, "sylvester matrix:\n{m}").unwrap();
        json["sylvester"] = (0..m.rows)
            .map(|i| {
                (0..m.cols)
                    .map(|j| Value::from(scalar_text(&m.get(i, j).cloned())))
                    .collect::<Value>()
            })
            .collect();
        if let Ok(l) = layer_sylvester(f, g) {
            let per = layer_permanent(&l)?;
            write!(text, "layer sylvester matrix:\n{l}layer permanent: {per}\n").unwrap();
            json["layer_permanent"] = Value::from(per.to_string());
        }
    }
    Ok(Output { text, json })
}

fn layermap(
    polys: &[String],
    region: &str,
    layers: Option<&str>,
    locus: bool,
    sort: SortKind,
) -> Result<Output> {
    let region = list(region, axis)?;
    let n = region.len();
    let layers = match layers {
        Some(s) => list(s, parse_layer)?,
        None => vec![Layer::one(); n],
    };
    for l in &layers {
        sort.check(l)?;
    }
    let fs = polys
        .iter()
        .map(|p| multi_in(p, n, sort))
        .collect::<Result<Vec<_>>>()?;
    let header: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    if locus {
        let points = corner_locus_on_grid(&fs, &region, &layers, sort)?;
        let mut text = header.join(",") + "\n";
        for p in &points {
            text += &(p
                .iter()
                .map(Rational::to_string)
                .collect::<Vec<_>>()
                .join(",")
                + "\n");
        }
        let json = points
            .iter()
            .map(|p| {
                p.iter()
                    .map(|x| Value::from(x.to_string()))
                    .collect::<Value>()
            })
            .collect();
        return Ok(Output { text, json });
    }
    let [f] = fs.as_slice() else {
        return Err(Error::PreconditionViolated(
            "layermap takes one polynomial unless --locus is given".to_string(),
        ));
    };
    let rows = grid_scan(f, &region, &layers, sort)?;
    let mut buf = Vec::new();
    write_csv(&rows, n, &mut buf).expect("writing to memory");
    let json = rows
        .iter()
        .map(|r| {
            json!({
                "point": r.point.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "value": r.value.value.to_string(),
                "layer": r.value.layer.to_string(),
                "csupp": r.csupp,
                "component": r.component.as_ref().map(|e| e.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
            })
        })
        .collect();
    Ok(Output {
        text: String::from_utf8(buf).expect("csv is utf-8"),
        json,
    })
}

/// Monic `a`-primary polynomials of degree `1..=max_degree`, each lower
/// coefficient absent or carrying a layer in `1..=max_layer`.
fn primary_family(
    a: &Rational,
    max_degree: u32,
    max_layer: u32,
    sort: SortKind,
) -> Vec<LayeredPoly> {
    let layers: Vec<Layer> = (1..=max_layer as i64)
        .map(Layer::int)
        .filter(|l| sort.is_valid(l))
        .collect();
    let mut out = Vec::new();
    for t in 1..=max_degree {
        let mut partial = vec![vec![(t, LayeredScalar::one())]];
        for i in 0..t {
            let coeff = |l: &Layer| {
                (
                    i,
                    LayeredScalar::new(a * Rational::from_integer((t - i).into()), l.clone()),
                )
            };
            partial = partial
                .into_iter()
                .flat_map(|terms| {
                    let mut next: Vec<_> = layers
                        .iter()
                        .map(|l| {
                            let mut v = terms.clone();
                            v.push(coeff(l));
                            v
                        })
                        .collect();
                    if i > 0 {
                        next.push(terms);
                    }
                    next
                })
                .collect();
        }
        out.extend(partial.into_iter().map(LayeredPoly::from_terms));
    }
    out
}

fn conjecture_search(
    max_degree: u32,
    max_layer: u32,
    a: &Rational,
    limit: usize,
    sort: SortKind,
) -> Result<Output> {
    let family = primary_family(a, max_degree, max_layer, sort);
    let mut checked = 0u64;
    let mut findings = Vec::new();
    'search: for f in &family {
        for (j, g) in family.iter().enumerate() {
            for h in &family[j..] {
                checked += 1;
                let gh = g.mul(h, sort);
                let lhs = resultant(f, &gh, sort)?;
                let rhs = match (resultant(f, g, sort)?, resultant(f, h, sort)?) {
                    (Some(x), Some(y)) => Some(x.mul(&y, sort)),
                    _ => None,
                };
                let holds = match (&lhs, &rhs) {
                    (Some(l), Some(r)) => l.surpasses_l(r, sort),
                    (l, r) => l == r,
                };
                if !holds {
                    findings.push((f, g, h, lhs, rhs));
                    if findings.len() >= limit {
                        break 'search;
                    }
                }
            }
        }
    }
    let mut text = format!(
        "checked {checked} triples from {} primary polynomials at root {a}: {} violations\n",
        family.len(),
        findings.len()
    );
    let mut json_findings = Vec::new();
    for (f, g, h, lhs, rhs) in &findings {
        let (f, g, h) = (format_poly(f), format_poly(g), format_poly(h));
        let gh = format_poly(&parse_poly(&g)?.mul(&parse_poly(&h)?, sort));
        let reproduce = format!(
            "layered --sort {sort} resultant '{f}' '{gh}'; layered --sort {sort} resultant '{f}' '{g}'; layered --sort {sort} resultant '{f}' '{h}'"
        );
        writeln!(
            text,
            "f = {f}, g = {g}, h = {h}: R(f,gh) = {}, R(f,g)R(f,h) = {}\n  reproduce: {reproduce}",
            scalar_text(lhs),
            scalar_text(rhs)
        )
        .unwrap();
        json_findings.push(json!({
            "f": f, "g": g, "h": h,
            "lhs": scalar_text(lhs), "rhs": scalar_text(rhs),
            "reproduce": reproduce,
        }));
    }
    let json = json!({ "checked": checked, "violations": json_findings });
    Ok(Output { text, json })
}
