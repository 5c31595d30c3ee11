//! Lifting polynomial holomorphic Poisson structures to blow-ups of
//! coordinate centers, with the submanifold/degeneracy conditions that
//! decide liftability and the pushforward/overlap verification.

use crate::chart::{Chart, VarKind};
use crate::error::CoreError;
use crate::exterior::{is_holo_bivector, PolyVector};
use crate::ideal::CoordIdeal;
use crate::liealg::{FieldMarker, LieAlgebraSC};
use crate::poly::Poly;
use crate::ratfn::RationalFn;
use crate::scalar::GaussRat;
use std::collections::BTreeMap;
use std::sync::Arc;

/// A polynomial holomorphic Poisson bivector on an all-holomorphic chart:
/// entries `σ^{ab} = {z^a, z^b}` for `a < b`, all z̄-free.
#[derive(Clone, Debug, PartialEq)]
pub struct HoloBivector {
    chart: Arc<Chart>,
    entries: BTreeMap<(usize, usize), Poly>,
}

impl HoloBivector {
    pub fn new(
        chart: &Arc<Chart>,
        entries: impl IntoIterator<Item = ((usize, usize), Poly)>,
    ) -> Result<Self, CoreError> {
        if chart.n_real() != 0 {
            return Err(CoreError::InvalidInput(
                "holomorphic Poisson structures live on all-holomorphic charts".into(),
            ));
        }
        let k = chart.n_holo();
        let mut map = BTreeMap::new();
        for ((a, b), p) in entries {
            if a >= k || b >= k || a == b {
                return Err(CoreError::InvalidInput(format!(
                    "entry indices ({}, {}) out of range for {} coordinates",
                    a, b, k
                )));
            }
            Chart::same(chart, p.chart())?;
            if !p.is_holomorphic() {
                return Err(CoreError::InvalidInput(format!(
                    "entry ({}, {}) is not z̄-free",
                    a, b
                )));
            }
            if p.is_zero() {
                continue;
            }
            let (key, poly) = if a < b { ((a, b), p) } else { ((b, a), p.neg()) };
            match map.entry(key) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(poly);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let sum = e.get().add(&poly)?;
                    *e.get_mut() = sum;
                }
            }
        }
        map.retain(|_, p| !p.is_zero());
        Ok(HoloBivector {
            chart: chart.clone(),
            entries: map,
        })
    }

    pub fn zero(chart: &Arc<Chart>) -> Result<Self, CoreError> {
        HoloBivector::new(chart, [])
    }

    /// Extract entries from a degree-2 polyvector over holomorphic directions.
    pub fn from_polyvector(w: &PolyVector) -> Result<Self, CoreError> {
        if !is_holo_bivector(w) {
            return Err(CoreError::InvalidInput(
                "expected a z̄-free bivector over holomorphic directions".into(),
            ));
        }
        let chart = w.chart().clone();
        let mut entries = Vec::new();
        for (mask, p) in w.terms() {
            let v = mask.trailing_zeros() as usize;
            let u = (63 - mask.leading_zeros()) as usize;
            // translate generator indices to holomorphic indices
            let a = (v - chart.n_real()) / 2;
            let b = (u - chart.n_real()) / 2;
            entries.push(((a, b), p.clone()));
        }
        HoloBivector::new(&chart, entries)
    }

    pub fn to_polyvector(&self) -> PolyVector {
        let mut out = PolyVector::zero(&self.chart);
        for ((a, b), p) in &self.entries {
            let biv = PolyVector::d_dvar(&self.chart, self.chart.holo_var(*a))
                .wedge(&PolyVector::d_dvar(&self.chart, self.chart.holo_var(*b)))
                .expect("same chart")
                .scale_poly(p)
                .expect("same chart");
            out = out.add(&biv).expect("same chart");
        }
        out
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn k(&self) -> usize {
        self.chart.n_holo()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Poly)> {
        self.entries.iter()
    }

    /// `{z^a, z^b}` for arbitrary index order.
    pub fn entry(&self, a: usize, b: usize) -> Poly {
        if a == b {
            return Poly::zero(&self.chart);
        }
        let (key, flip) = if a < b { ((a, b), false) } else { ((b, a), true) };
        match self.entries.get(&key) {
            None => Poly::zero(&self.chart),
            Some(p) if !flip => p.clone(),
            Some(p) => p.neg(),
        }
    }

    /// `{f, g} = Σ_{a<b} σ^{ab} (∂_a f ∂_b g − ∂_b f ∂_a g)`.
    pub fn bracket(&self, f: &Poly, g: &Poly) -> Result<Poly, CoreError> {
        let mut out = Poly::zero(&self.chart);
        for ((a, b), s) in &self.entries {
            let va = self.chart.holo_var(*a);
            let vb = self.chart.holo_var(*b);
            let term = f
                .partial(va)
                .mul(&g.partial(vb))?
                .sub(&f.partial(vb).mul(&g.partial(va))?)?;
            out = out.add(&s.mul(&term)?)?;
        }
        Ok(out)
    }

    /// Bracket extended to rational functions by the quotient rule.
    pub fn bracket_ratfn(&self, f: &RationalFn, g: &RationalFn) -> Result<RationalFn, CoreError> {
        let mut out = RationalFn::zero(&self.chart);
        for ((a, b), s) in &self.entries {
            let va = self.chart.holo_var(*a);
            let vb = self.chart.holo_var(*b);
            let term = f
                .partial(va)?
                .mul(&g.partial(vb)?)?
                .sub(&f.partial(vb)?.mul(&g.partial(va)?)?)?;
            out = out.add(&term.mul(&RationalFn::from_poly(s.clone())?)?)?;
        }
        Ok(out)
    }

    /// Jacobi identity on all coordinate triples; returns the first failing
    /// triple with its Jacobiator as a witness.
    pub fn jacobi_check(&self) -> Result<(), CoreError> {
        let k = self.k();
        for a in 0..k {
            for b in (a + 1)..k {
                for c in (b + 1)..k {
                    let za = Poly::var(&self.chart, self.chart.holo_var(a));
                    let zb = Poly::var(&self.chart, self.chart.holo_var(b));
                    let zc = Poly::var(&self.chart, self.chart.holo_var(c));
                    let j = self
                        .bracket(&self.entry(a, b), &zc)?
                        .add(&self.bracket(&self.entry(b, c), &za)?)?
                        .add(&self.bracket(&self.entry(c, a), &zb)?)?;
                    if !j.is_zero() {
                        return Err(CoreError::NotJacobiBivector(a, b, c));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A blow-up center: the coordinate subspace cut out by the first `l`
/// holomorphic coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Center {
    chart: Arc<Chart>,
    l: usize,
}

impl Center {
    pub fn new(chart: &Arc<Chart>, l: usize) -> Result<Self, CoreError> {
        if l == 0 || l > chart.n_holo() {
            return Err(CoreError::IndexOutOfRange(l, chart.n_holo()));
        }
        Ok(Center {
            chart: chart.clone(),
            l,
        })
    }

    pub fn codim(&self) -> usize {
        self.l
    }

    pub fn ideal(&self) -> CoordIdeal {
        CoordIdeal::first_holo(&self.chart, self.l).expect("validated")
    }
}

/// The three conditions of the liftability analysis.
#[derive(Clone, Debug, PartialEq)]
pub struct SubmanifoldReport {
    /// `σ^{ab} ∈ I_Z` whenever `a ≤ l` or `b ≤ l`.
    pub is_poisson_submanifold: bool,
    /// `{z^i,z^j}z^m + {z^j,z^m}z^i + {z^m,z^i}z^j ∈ I_Z³` on generator triples.
    pub is_degenerate: bool,
    /// `{z^i, z^j} ∈ I_Z²` on generator pairs.
    pub conormal_abelian: bool,
    /// First failing entry/polynomial per condition, for diagnosis.
    pub poisson_witness: Option<String>,
    pub degenerate_witness: Option<String>,
    pub abelian_witness: Option<String>,
}

/// Evaluate the submanifold, degeneracy and abelian conditions for a center.
pub fn submanifold_conditions(
    sigma: &HoloBivector,
    center: &Center,
) -> Result<SubmanifoldReport, CoreError> {
    Chart::same(sigma.chart(), &center.chart)?;
    sigma.jacobi_check()?;
    let ideal = center.ideal();
    let l = center.l;
    let k = sigma.k();

    let mut poisson_witness = None;
    'outer: for a in 0..k {
        for b in (a + 1)..k {
            if a >= l && b >= l {
                continue;
            }
            let e = sigma.entry(a, b);
            if let Some(w) = ideal.membership_witness(&e, 1)? {
                poisson_witness = Some(format!(
                    "{{{}, {}}} = {} has monomial {} outside I",
                    sigma.chart().var_name(sigma.chart().holo_var(a)),
                    sigma.chart().var_name(sigma.chart().holo_var(b)),
                    e,
                    w
                ));
                break 'outer;
            }
        }
    }

    let mut degenerate_witness = None;
    'deg: for i in 0..l {
        for j in (i + 1)..l {
            for m in (j + 1)..l {
                let zi = Poly::var(sigma.chart(), sigma.chart().holo_var(i));
                let zj = Poly::var(sigma.chart(), sigma.chart().holo_var(j));
                let zm = Poly::var(sigma.chart(), sigma.chart().holo_var(m));
                let expr = sigma
                    .entry(i, j)
                    .mul(&zm)?
                    .add(&sigma.entry(j, m).mul(&zi)?)?
                    .add(&sigma.entry(m, i).mul(&zj)?)?;
                if !ideal.membership(&expr, 3)? {
                    degenerate_witness = Some(expr.to_string());
                    break 'deg;
                }
            }
        }
    }

    let mut abelian_witness = None;
    'ab: for i in 0..l {
        for j in (i + 1)..l {
            let e = sigma.entry(i, j);
            if !ideal.membership(&e, 2)? {
                abelian_witness = Some(format!(
                    "{{{}, {}}} = {}",
                    sigma.chart().var_name(sigma.chart().holo_var(i)),
                    sigma.chart().var_name(sigma.chart().holo_var(j)),
                    e
                ));
                break 'ab;
            }
        }
    }

    Ok(SubmanifoldReport {
        is_poisson_submanifold: poisson_witness.is_none(),
        is_degenerate: degenerate_witness.is_none(),
        conormal_abelian: abelian_witness.is_none(),
        poisson_witness,
        degenerate_witness,
        abelian_witness,
    })
}

/// Structure constants of the conormal Lie algebra at a tangent point of the
/// center: the linear-in-generators part of `{z^i, z^j}` modulo `I²`,
/// evaluated at the point. The point lists one value per holomorphic
/// coordinate of the chart (generator slots are ignored).
pub fn conormal_algebra(
    sigma: &HoloBivector,
    center: &Center,
    point: &[GaussRat],
) -> Result<LieAlgebraSC, CoreError> {
    Chart::same(sigma.chart(), &center.chart)?;
    let report = submanifold_conditions(sigma, center)?;
    if !report.is_poisson_submanifold {
        return Err(CoreError::NotPoissonSubmanifold(
            report.poisson_witness.unwrap_or_default(),
        ));
    }
    let k = sigma.k();
    if point.len() != k {
        return Err(CoreError::PointLength(point.len(), k));
    }
    let l = center.l;
    let chart = sigma.chart();
    // Full evaluation vector: generators and their conjugates set from the
    // point, with generator coordinates themselves zeroed (we evaluate the
    // tangent part only, after splitting off the single generator factor).
    let mut brackets = Vec::new();
    for i in 0..l {
        for j in (i + 1)..l {
            let e = sigma.entry(i, j);
            let mut coeffs = vec![GaussRat::zero(); l];
            for (mono, c) in e.terms() {
                let gen_deg: u32 = (0..l).map(|g| mono.0[chart.holo_var(g)]).sum();
                if gen_deg != 1 {
                    continue; // I²-part or higher; dropped mod I²
                }
                let m = (0..l)
                    .find(|&g| mono.0[chart.holo_var(g)] == 1)
                    .expect("degree-1 monomial");
                // evaluate the tangent factor
                let mut val = c.clone();
                for t in l..k {
                    let exp = mono.0[chart.holo_var(t)];
                    for _ in 0..exp {
                        val = &val * &point[t];
                    }
                }
                coeffs[m] += &val;
            }
            brackets.push(((i, j), coeffs));
        }
    }
    LieAlgebraSC::new(l, FieldMarker::Complex, brackets)
}

/// The linear holomorphic Poisson structure of a Lie algebra:
/// `{z^i, z^j} = Σ_m c^m_{ij} z^m`. Round-trips with `conormal_algebra`
/// at the origin.
pub fn linear_poisson(g: &LieAlgebraSC, chart: &Arc<Chart>) -> Result<HoloBivector, CoreError> {
    if chart.n_holo() != g.dim {
        return Err(CoreError::InvalidInput(format!(
            "chart has {} holomorphic coordinates, algebra has dimension {}",
            chart.n_holo(),
            g.dim
        )));
    }
    let mut entries = Vec::new();
    for i in 0..g.dim {
        for j in (i + 1)..g.dim {
            let mut p = Poly::zero(chart);
            for (m, c) in g.bracket(i, j).iter().enumerate() {
                if !c.is_zero() {
                    p = p.add(&Poly::var(chart, chart.holo_var(m)).scale(c))?;
                }
            }
            entries.push(((i, j), p));
        }
    }
    HoloBivector::new(chart, entries)
}

/// One chart of the blow-up atlas.
#[derive(Clone, Debug)]
pub struct LiftedChart {
    /// Which coordinate divides (0-based index < l).
    pub index: usize,
    pub chart: Arc<Chart>,
    /// Substitution realizing the projection `p` (ambient generators to
    /// polynomials on the blow-up chart).
    pub projection: BTreeMap<usize, Poly>,
    pub sigma_tilde: HoloBivector,
}

/// The lifted bivector on every blow-up chart.
#[derive(Clone, Debug)]
pub struct BlowupAtlas {
    pub ambient: Arc<Chart>,
    pub l: usize,
    pub charts: Vec<LiftedChart>,
}

/// Build the `a`-th blow-up chart and its projection substitution:
/// `z^j ↦ z^a v^j` for `j ≤ l, j ≠ a`, identity on `z^a` and the
/// tangent coordinates.
pub fn blowup_chart(
    a: usize,
    center: &Center,
    ambient: &Arc<Chart>,
) -> Result<(Arc<Chart>, BTreeMap<usize, Poly>), CoreError> {
    Chart::same(&center.chart, ambient)?;
    let l = center.l;
    if a >= l {
        return Err(CoreError::IndexOutOfRange(a + 1, l));
    }
    let k = ambient.n_holo();
    let mut names = Vec::with_capacity(k);
    for j in 0..k {
        if j < l && j != a {
            names.push(format!("v{}", j + 1));
        } else {
            names.push(ambient.holo_names()[j].clone());
        }
    }
    let chart = Chart::new(vec![], names)?;
    let za = Poly::var(&chart, chart.holo_var(a));
    let mut subst = BTreeMap::new();
    for j in 0..k {
        let image = if j < l && j != a {
            za.mul(&Poly::var(&chart, chart.holo_var(j)))?
        } else {
            Poly::var(&chart, chart.holo_var(j))
        };
        subst.insert(ambient.holo_var(j), image.clone());
        subst.insert(ambient.antiholo_var(j), image.conjugate());
    }
    Ok((chart, subst))
}

fn divide_or(
    numerator: &Poly,
    divisor: &Poly,
    chart_index: usize,
    pair: (String, String),
    not_poisson: bool,
) -> Result<Poly, CoreError> {
    match numerator.exact_divide(divisor) {
        Ok(q) => Ok(q),
        Err(CoreError::NotDivisible { witness }) => {
            let msg = format!(
                "chart {}: {{{}, {}}} leaves remainder monomial {} after division",
                chart_index + 1,
                pair.0,
                pair.1,
                witness
            );
            if not_poisson {
                Err(CoreError::NotPoissonSubmanifold(msg))
            } else {
                Err(CoreError::NotDegenerate(msg))
            }
        }
        Err(e) => Err(e),
    }
}

/// Lift `σ` to every blow-up chart of the center, or report which condition
/// fails: a first-kind bracket that does not divide means the center is not
/// a Poisson submanifold, a second-kind bracket means the conormal algebra
/// is not degenerate. First-kind brackets are checked on all charts before
/// any second-kind bracket, so the error kind names the weaker condition
/// whenever both fail. For `l = 1` the projection is the identity and the
/// lift exists unconditionally.
pub fn lift_poisson(sigma: &HoloBivector, center: &Center) -> Result<BlowupAtlas, CoreError> {
    Chart::same(sigma.chart(), &center.chart)?;
    sigma.jacobi_check()?;
    let l = center.l;
    let k = sigma.k();
    let mut prepared: Vec<(Arc<Chart>, BTreeMap<usize, Poly>)> = Vec::with_capacity(l);
    for a in 0..l {
        prepared.push(blowup_chart(a, center, sigma.chart())?);
    }
    let mut entry_sets: Vec<Vec<((usize, usize), Poly)>> = vec![Vec::new(); l];
    // First pass: divisions of the first kind plus the division-free entries.
    for a in 0..l {
        let (chart, subst) = &prepared[a];
        let s = |p: &Poly| p.substitute_poly(subst, chart);
        let za = Poly::var(chart, chart.holo_var(a));
        let name = |idx: usize| chart.var_name(chart.holo_var(idx)).to_string();
        for p in 0..k {
            for q in (p + 1)..k {
                let entry = if p == a && q < l {
                    // {z^a, v^q} = S(σ^{aq}) / z^a
                    divide_or(&s(&sigma.entry(a, q))?, &za, a, (name(p), name(q)), true)?
                } else if q == a {
                    // {v^p, z^a} = −{z^a, v^p} = S(σ^{pa}) / z^a
                    divide_or(&s(&sigma.entry(p, a))?, &za, a, (name(p), name(q)), true)?
                } else if p < l && p != a && q >= l {
                    // {v^p, z^q} = [S(σ^{pq}) + v^p S(σ^{qa})] / z^a
                    let vp = Poly::var(chart, chart.holo_var(p));
                    let num = s(&sigma.entry(p, q))?.add(&vp.mul(&s(&sigma.entry(q, a))?)?)?;
                    divide_or(&num, &za, a, (name(p), name(q)), true)?
                } else if p == a && q >= l {
                    // {z^a, z^q} = S(σ^{aq})
                    s(&sigma.entry(a, q))?
                } else if p >= l {
                    // {z^p, z^q} = S(σ^{pq})
                    s(&sigma.entry(p, q))?
                } else {
                    continue; // second-kind pair, handled below
                };
                if !entry.is_zero() {
                    entry_sets[a].push(((p, q), entry));
                }
            }
        }
    }
    // Second pass: second-kind divisions {v^p, v^q}.
    for a in 0..l {
        let (chart, subst) = &prepared[a];
        let s = |p: &Poly| p.substitute_poly(subst, chart);
        let za = Poly::var(chart, chart.holo_var(a));
        let za2 = za.mul(&za)?;
        let name = |idx: usize| chart.var_name(chart.holo_var(idx)).to_string();
        for p in 0..l {
            for q in (p + 1)..l {
                if p == a || q == a {
                    continue;
                }
                // {v^p, v^q} = [S(σ^{pq}) + v^p S(σ^{qa}) + v^q S(σ^{ap})] / (z^a)²
                let vp = Poly::var(chart, chart.holo_var(p));
                let vq = Poly::var(chart, chart.holo_var(q));
                let num = s(&sigma.entry(p, q))?
                    .add(&vp.mul(&s(&sigma.entry(q, a))?)?)?
                    .add(&vq.mul(&s(&sigma.entry(a, p))?)?)?;
                let entry = divide_or(&num, &za2, a, (name(p), name(q)), false)?;
                if !entry.is_zero() {
                    entry_sets[a].push(((p, q), entry));
                }
            }
        }
    }
    let mut charts = Vec::with_capacity(l);
    for (a, entries) in entry_sets.into_iter().enumerate() {
        let (chart, subst) = prepared[a].clone();
        let sigma_tilde = HoloBivector::new(&chart, entries)?;
        charts.push(LiftedChart {
            index: a,
            chart,
            projection: subst,
            sigma_tilde,
        });
    }
    Ok(BlowupAtlas {
        ambient: sigma.chart().clone(),
        l,
        charts,
    })
}

/// Outcome of the exact lift verification.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub pushforward_ok: bool,
    pub overlaps_ok: bool,
    pub jacobi_ok: bool,
    pub witness: Option<String>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.pushforward_ok && self.overlaps_ok && self.jacobi_ok
    }
}

/// Verify `{f∘p, g∘p}_{σ̃} = {f,g}_σ ∘ p` on all ambient coordinate pairs of
/// every chart, Jacobi of each lifted bivector, and tensor consistency of
/// chart overlaps.
pub fn verify_lift(sigma: &HoloBivector, atlas: &BlowupAtlas) -> Result<VerifyReport, CoreError> {
    Chart::same(sigma.chart(), &atlas.ambient)?;
    let k = sigma.k();
    // Pushforward identity per chart.
    for lc in &atlas.charts {
        for p in 0..k {
            for q in (p + 1)..k {
                let fp = Poly::var(&atlas.ambient, atlas.ambient.holo_var(p))
                    .substitute_poly(&lc.projection, &lc.chart)?;
                let gq = Poly::var(&atlas.ambient, atlas.ambient.holo_var(q))
                    .substitute_poly(&lc.projection, &lc.chart)?;
                let lhs = lc.sigma_tilde.bracket(&fp, &gq)?;
                let rhs = sigma.entry(p, q).substitute_poly(&lc.projection, &lc.chart)?;
                if lhs != rhs {
                    return Ok(VerifyReport {
                        pushforward_ok: false,
                        overlaps_ok: true,
                        jacobi_ok: true,
                        witness: Some(format!(
                            "chart {}: {{{}∘p, {}∘p}} = {} but {{{}, {}}}∘p = {}",
                            lc.index + 1,
                            atlas.ambient.var_name(atlas.ambient.holo_var(p)),
                            atlas.ambient.var_name(atlas.ambient.holo_var(q)),
                            lhs,
                            atlas.ambient.var_name(atlas.ambient.holo_var(p)),
                            atlas.ambient.var_name(atlas.ambient.holo_var(q)),
                            rhs
                        )),
                    });
                }
            }
        }
        if let Err(CoreError::NotJacobiBivector(a, b, c)) = lc.sigma_tilde.jacobi_check() {
            return Ok(VerifyReport {
                pushforward_ok: true,
                overlaps_ok: true,
                jacobi_ok: false,
                witness: Some(format!(
                    "chart {}: lifted bivector fails Jacobi at triple ({}, {}, {})",
                    lc.index + 1,
                    a + 1,
                    b + 1,
                    c + 1
                )),
            });
        }
    }
    // Overlap consistency: transitions carry σ̃_a to σ̃_b as rational tensors.
    for ca in &atlas.charts {
        for cb in &atlas.charts {
            if ca.index == cb.index {
                continue;
            }
            let (a, b) = (ca.index, cb.index);
            // Chart-b coordinates as rational functions on chart a:
            //   position b: z^a·v_a^b, position a: 1/v_a^b,
            //   position m<l (m∉{a,b}): v_a^m / v_a^b, position q≥l: z^q.
            let va_b = RationalFn::from_poly(Poly::var(&ca.chart, ca.chart.holo_var(b)))?;
            let za = RationalFn::from_poly(Poly::var(&ca.chart, ca.chart.holo_var(a)))?;
            let mut transition: Vec<RationalFn> = Vec::with_capacity(k);
            for pos in 0..k {
                let t = if pos == b {
                    za.mul(&va_b)?
                } else if pos == a {
                    RationalFn::one(&ca.chart).div(&va_b)?
                } else if pos < atlas.l {
                    RationalFn::from_poly(Poly::var(&ca.chart, ca.chart.holo_var(pos)))?
                        .div(&va_b)?
                } else {
                    RationalFn::from_poly(Poly::var(&ca.chart, ca.chart.holo_var(pos)))?
                };
                transition.push(t);
            }
            // Substitution map for chart-b generators.
            let mut tmap: BTreeMap<usize, RationalFn> = BTreeMap::new();
            for pos in 0..k {
                tmap.insert(cb.chart.holo_var(pos), transition[pos].clone());
                tmap.insert(cb.chart.antiholo_var(pos), transition[pos].conjugate());
            }
            for p in 0..k {
                for q in (p + 1)..k {
                    let lhs = cb
                        .sigma_tilde
                        .entry(p, q)
                        .substitute(&tmap, &ca.chart)?;
                    let rhs = ca
                        .sigma_tilde
                        .bracket_ratfn(&transition[p], &transition[q])?;
                    if !lhs.eq_rational(&rhs)? {
                        return Ok(VerifyReport {
                            pushforward_ok: true,
                            overlaps_ok: false,
                            jacobi_ok: true,
                            witness: Some(format!(
                                "overlap of charts {} and {} fails on pair ({}, {})",
                                a + 1,
                                b + 1,
                                cb.chart.var_name(cb.chart.holo_var(p)),
                                cb.chart.var_name(cb.chart.holo_var(q)),
                            )),
                        });
                    }
                }
            }
        }
    }
    Ok(VerifyReport {
        pushforward_ok: true,
        overlaps_ok: true,
        jacobi_ok: true,
        witness: None,
    })
}

/// The exceptional divisor `{z^a = 0}` is Poisson in every chart iff all
/// brackets `{z^a, ·}` of the lifted structure are divisible by `z^a`.
/// Agrees with the conormal-abelian flag of `submanifold_conditions`.
pub fn exceptional_divisor_poisson(atlas: &BlowupAtlas) -> bool {
    for lc in &atlas.charts {
        let a = lc.index;
        let za = Poly::var(&lc.chart, lc.chart.holo_var(a));
        for q in 0..lc.chart.n_holo() {
            if q == a {
                continue;
            }
            let e = lc.sigma_tilde.entry(a, q);
            if e.is_zero() {
                continue;
            }
            if e.exact_divide(&za).is_err() {
                return false;
            }
        }
    }
    true
}

/// True when every generator of a monomial is a holomorphic coordinate;
/// convenience for validating CLI-supplied charts.
pub fn all_holo(chart: &Arc<Chart>) -> bool {
    (0..chart.nvars()).all(|v| chart.kind(v) != VarKind::Real)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> GaussRat {
        GaussRat::from_int(n)
    }

    /// σ = z1 ∂1∧∂2 on ℂ².
    fn running_example() -> (HoloBivector, Center) {
        let ch = Chart::holo(2);
        let z1 = Poly::var(&ch, ch.holo_var(0));
        let sigma = HoloBivector::new(&ch, [((0, 1), z1)]).unwrap();
        let center = Center::new(&ch, 2).unwrap();
        (sigma, center)
    }

    fn so3_linear() -> (HoloBivector, Center) {
        let ch = Chart::holo(3);
        let g = LieAlgebraSC::so3(FieldMarker::Complex);
        let sigma = linear_poisson(&g, &ch).unwrap();
        let center = Center::new(&ch, 3).unwrap();
        (sigma, center)
    }

    #[test]
    fn jacobi_examples() {
        let (sigma, _) = running_example();
        assert!(sigma.jacobi_check().is_ok());
        let (so3, _) = so3_linear();
        assert!(so3.jacobi_check().is_ok());
        // {z1,z2} = z1, {z2,z3} = z3² + z1, {z1,z3} = 0: decided by expansion
        let ch = Chart::holo(3);
        let z1 = Poly::var(&ch, ch.holo_var(0));
        let z3 = Poly::var(&ch, ch.holo_var(2));
        let sigma = HoloBivector::new(
            &ch,
            [((0, 1), z1.clone()), ((1, 2), z3.mul(&z3).unwrap().add(&z1).unwrap())],
        )
        .unwrap();
        // Jacobiator: {{z1,z2},z3} + {{z2,z3},z1} + {{z3,z1},z2}
        //  = {z1,z3} + {z3²+z1, z1} + 0 = 0 − {z1, z3²+z1} = −(2 z3 {z1,z3} + {z1,z1}) = 0.
        assert!(sigma.jacobi_check().is_ok());
    }

    #[test]
    fn submanifold_conditions_examples() {
        let (sigma, center) = running_example();
        let rep = submanifold_conditions(&sigma, &center).unwrap();
        assert!(rep.is_poisson_submanifold);
        assert!(rep.is_degenerate); // l = 2: vacuous triple condition
        assert!(!rep.conormal_abelian); // {z1, z2} = z1 ∉ I²

        let (so3, origin) = so3_linear();
        let rep = submanifold_conditions(&so3, &origin).unwrap();
        assert!(rep.is_poisson_submanifold);
        assert!(!rep.is_degenerate);
        let w = rep.degenerate_witness.unwrap();
        assert_eq!(w, "z1^2 + z2^2 + z3^2");

        // {z1, z2} = z1²: poisson, degenerate, abelian
        let ch = Chart::holo(2);
        let z1 = Poly::var(&ch, ch.holo_var(0));
        let sq = HoloBivector::new(&ch, [((0, 1), z1.mul(&z1).unwrap())]).unwrap();
        let rep = submanifold_conditions(&sq, &Center::new(&ch, 2).unwrap()).unwrap();
        assert!(rep.is_poisson_submanifold && rep.is_degenerate && rep.conormal_abelian);
    }

    #[test]
    fn conormal_algebra_examples() {
        let (sigma, center) = running_example();
        let g = conormal_algebra(&sigma, &center, &[q(0), q(0)]).unwrap();
        // [e1, e2] = e1
        assert_eq!(g.dim, 2);
        let b = g.bracket(0, 1);
        assert_eq!(b[0], GaussRat::one());
        assert!(b[1].is_zero());

        let (so3, origin) = so3_linear();
        let g = conormal_algebra(&so3, &origin, &[q(0), q(0), q(0)]).unwrap();
        assert_eq!(g, LieAlgebraSC::so3(FieldMarker::Complex));

        // round trip through linear_poisson
        let model = LieAlgebraSC::model(3, FieldMarker::Complex);
        let ch = Chart::holo(3);
        let lin = linear_poisson(&model, &ch).unwrap();
        let back =
            conormal_algebra(&lin, &Center::new(&ch, 3).unwrap(), &[q(0), q(0), q(0)]).unwrap();
        assert_eq!(back, model);
    }

    #[test]
    fn blowup_chart_formula() {
        let ch = Chart::holo(3);
        let center = Center::new(&ch, 3).unwrap();
        // a = 2 (0-based 1): (v1, z2, v3) ↦ (z2 v1, z2, z2 v3)
        let (bc, subst) = blowup_chart(1, &center, &ch).unwrap();
        assert_eq!(bc.holo_names(), &["v1", "z2", "v3"]);
        let z2 = Poly::var(&bc, bc.holo_var(1));
        let v1 = Poly::var(&bc, bc.holo_var(0));
        assert_eq!(subst[&ch.holo_var(0)], z2.mul(&v1).unwrap());
        assert_eq!(subst[&ch.holo_var(1)], z2);
        // l = 1: identity-like, no v coordinates
        let c1 = Center::new(&ch, 1).unwrap();
        let (bc1, subst1) = blowup_chart(0, &c1, &ch).unwrap();
        assert_eq!(bc1.holo_names(), ch.holo_names());
        assert_eq!(
            subst1[&ch.holo_var(2)],
            Poly::var(&bc1, bc1.holo_var(2))
        );
        assert!(matches!(
            blowup_chart(1, &c1, &ch),
            Err(CoreError::IndexOutOfRange(2, 1))
        ));
    }

    #[test]
    fn lift_running_example() {
        let (sigma, center) = running_example();
        let atlas = lift_poisson(&sigma, &center).unwrap();
        assert_eq!(atlas.charts.len(), 2);
        // chart 1: {z1, v2} = 1
        let c0 = &atlas.charts[0];
        assert_eq!(c0.sigma_tilde.entry(0, 1), Poly::one(&c0.chart));
        // chart 2: {v1, z2} = v1
        let c1 = &atlas.charts[1];
        assert_eq!(
            c1.sigma_tilde.entry(0, 1),
            Poly::var(&c1.chart, c1.chart.holo_var(0))
        );
        // verification passes exactly
        let rep = verify_lift(&sigma, &atlas).unwrap();
        assert!(rep.ok());
        // exceptional divisor is not Poisson; conormal is not abelian
        assert!(!exceptional_divisor_poisson(&atlas));
    }

    #[test]
    fn so3_rejected_not_degenerate() {
        let (so3, origin) = so3_linear();
        match lift_poisson(&so3, &origin) {
            Err(CoreError::NotDegenerate(msg)) => {
                assert!(msg.contains("chart 1"), "witness should name chart 1: {}", msg);
            }
            other => panic!("expected NotDegenerate, got {:?}", other),
        }
    }

    #[test]
    fn zero_bivector_lifts_trivially() {
        let ch = Chart::holo(2);
        let sigma = HoloBivector::zero(&ch).unwrap();
        let center = Center::new(&ch, 2).unwrap();
        let atlas = lift_poisson(&sigma, &center).unwrap();
        for lc in &atlas.charts {
            assert!(lc.sigma_tilde.entries().next().is_none());
        }
        assert!(verify_lift(&sigma, &atlas).unwrap().ok());
        assert!(exceptional_divisor_poisson(&atlas));
    }

    #[test]
    fn corrupted_atlas_detected() {
        let (sigma, center) = running_example();
        let mut atlas = lift_poisson(&sigma, &center).unwrap();
        let bad_chart = atlas.charts[0].chart.clone();
        atlas.charts[0].sigma_tilde = HoloBivector::new(
            &bad_chart,
            [((0, 1), Poly::var(&bad_chart, bad_chart.holo_var(1)))],
        )
        .unwrap();
        let rep = verify_lift(&sigma, &atlas).unwrap();
        assert!(!rep.ok());
        assert!(rep.witness.is_some());
    }

    #[test]
    fn abelian_conormal_gives_poisson_divisor() {
        // {z1, z2} = z1²: abelian conormal, exceptional divisor Poisson.
        let ch = Chart::holo(2);
        let z1 = Poly::var(&ch, ch.holo_var(0));
        let sigma = HoloBivector::new(&ch, [((0, 1), z1.mul(&z1).unwrap())]).unwrap();
        let center = Center::new(&ch, 2).unwrap();
        let atlas = lift_poisson(&sigma, &center).unwrap();
        assert!(verify_lift(&sigma, &atlas).unwrap().ok());
        assert!(exceptional_divisor_poisson(&atlas));
        let rep = submanifold_conditions(&sigma, &center).unwrap();
        assert!(rep.conormal_abelian);
    }
}
