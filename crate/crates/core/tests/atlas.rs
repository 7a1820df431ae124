use foliage::atlas::*;
use foliage::exactalg::Matrix;
use foliage::mpoly::{MPoly, Monomial};
use foliage::projforms::{
    aut_algebra, fix_algebra, integrating_factor_dim, is_invariant, random_combination, space_dim,
    verify_first_integral, zariski_tangent_dim,
};
use foliage::rng;
use foliage::scalar::{qi, Rational};
use foliage::torus::{eigenspace, tm_dim, WeightData};

fn random_matrix(rows: usize, cols: usize, label: &str) -> Matrix<Rational> {
    let mut r = rng::stream(42, label);
    Matrix::from_rows(cols, (0..rows).map(|_| (0..cols).map(|_| rng::coeff_q(&mut r)).collect()).collect())
}

fn log_family(parts: &[u32]) -> LogFamily {
    LogFamily::new(LogPartition::new(parts).unwrap())
}

#[test]
fn logarithmic_dimensions_by_generic_rank() {
    assert_eq!(parameterization_dim(&log_family(&[1, 1, 1, 1, 1]), 42, "t"), 18);
    let fam = log_family(&[1, 4]);
    assert_eq!(parameterization_dim(&fam, 42, "t"), 36);
    // Rescaling the factors is invisible, so the parameter count overshoots.
    assert!(fam.num_params() - 1 > 36);
}

#[test]
fn logarithmic_members_have_integrating_factors() {
    for parts in [&[1u32, 1, 1, 1, 1][..], &[1, 1, 3], &[2, 3]] {
        let fam = log_family(parts);
        let w = fam.member(&fam.random_point(&mut rng::stream(42, "factor"))).unwrap();
        assert!(w.is_integrable());
        assert!(integrating_factor_dim(&w) > 0, "{parts:?}");
    }
}

#[test]
fn pullbacks_of_the_p4_form() {
    let phi = random_matrix(5, 4, "phi");
    let w = slog34_member(&phi).unwrap();
    assert!(w.is_integrable());
    let (a, b) = slog34_factors(&phi).unwrap();
    assert!(verify_first_integral(w.form(), &a, &b, 4, 3).unwrap());
    assert_eq!(zariski_tangent_dim(&w).unwrap(), 16);
    assert_eq!(parameterization_dim(&Slog34Family::default(), 42, "t"), 16);
    let mut rows: Vec<Vec<Rational>> = phi.rows_iter().map(|r| r.to_vec()).collect();
    for r in &mut rows {
        r[3] = r[0].clone();
    }
    assert!(slog34_member(&Matrix::from_rows(4, rows)).is_err());
}

#[test]
fn quadric_quintic_family() {
    let printed = slog25_quintics();
    let solved = divisible_quintics();
    assert_eq!(solved.len(), 11);
    let monos = Monomial::all_of_degree(4, 5);
    let coords = |p: &MPoly<Rational>| monos.iter().map(|m| p.coeff(m)).collect::<Vec<_>>();
    let cols: Vec<Vec<Rational>> = printed.iter().chain(&solved).map(coords).collect();
    assert_eq!(Matrix::from_columns(monos.len(), &cols).rank(), 11);

    let mut r = rng::stream(42, "c");
    let c: Vec<Rational> = (0..11).map(|_| rng::coeff_q(&mut r)).collect();
    let w = slog25_member(&c).unwrap();
    assert!(w.is_integrable());
    let mut f = MPoly::zero(4);
    for (fk, ck) in printed.iter().zip(&c) {
        f += &fk.scale(ck);
    }
    assert!(verify_first_integral(w.form(), &f, &slog25_quadric(), 5, 2).unwrap());
    assert_eq!(zariski_tangent_dim(&w).unwrap(), 19);

    let union = &slog25_quadric() * &MPoly::var(4, 3);
    assert_eq!(hypersurface_stabilizer_dim(&union).unwrap(), 6);
    assert_eq!(parameterization_dim(&slog25_family(), 42, "t"), 10 + 15 - 6);
}

#[test]
fn special_members_lack_polynomial_integrating_factors() {
    let fam = Slog34Family::default();
    let w = fam.member(&fam.random_point(&mut rng::stream(42, "s34"))).unwrap();
    assert_eq!(integrating_factor_dim(&w), 0);
    let w = slog25_member(&(1..=11).map(qi).collect::<Vec<_>>()).unwrap();
    assert_eq!(integrating_factor_dim(&w), 0);
}

#[test]
fn linear_pullback_dimension() {
    // A foliation on the plane plus the projection center.
    let oracle = (space_dim(2, 3) - 1) + 3;
    assert_eq!(oracle, 26);
    assert_eq!(parameterization_dim(&LinearPullbackFamily::new(3), 42, "t"), oracle);
}

#[test]
fn orbit_rank_agrees_with_the_dimension_formula() {
    for (a, b, c, n) in [(1, 2, 3, 7), (2, 3, 5, 11), (0, 1, 1, 2), (1, 1, 2, 5)] {
        let w = WeightData::new(a, b, c, n).unwrap();
        let fam = OrbitFamily::new(&eigenspace(3, &w)).unwrap();
        assert_eq!(parameterization_dim(&fam, 42, "t"), tm_dim(3, &w).unwrap(), "{w}");
    }
}

#[test]
fn torus_members_of_the_tables_lack_integrating_factors() {
    for id in [TableId::Split, TableId::NonintegrableNonrigid, TableId::NonintegrableRigid] {
        for (kind, _) in table_catalog(id) {
            let ComponentKind::TM(w) = kind else { unreachable!() };
            let v = eigenspace(3, &w);
            let member = random_combination(3, 3, &v, &mut rng::stream(42, &format!("if/{w}")));
            assert_eq!(integrating_factor_dim(&member), 0, "{w}");
        }
    }
}

#[test]
fn explicit_models_verify() {
    let checks = explicit_model_checks().unwrap();
    assert!(checks.len() >= 20);
    for c in &checks {
        assert!(c.holds, "{} {}", c.model, c.statement);
    }
}

#[test]
fn catalog_shape() {
    let sizes: Vec<usize> = TableId::ALL.iter().map(|id| table_catalog(*id).len()).collect();
    assert_eq!(sizes, [8, 7, 8, 5]);
    let components = component_catalog();
    assert_eq!(components.len(), 24);
    let headers: Vec<String> = table_catalog(TableId::Split).iter().map(|(k, _)| k.header()).collect();
    assert!(headers.contains(&"TM₃(1,3,7;10)=TM₃(4,6,7;25)".to_string()));
    assert_eq!(contained_catalog().len(), 5);
}

#[test]
fn log_member_rejects_bad_input() {
    let p = LogPartition::new(&[2, 3]).unwrap();
    let f = [MPoly::var(4, 0).pow(2), MPoly::var(4, 1).pow(3)];
    assert!(log_member(&p, &[qi(3), qi(-2)], &f).is_ok());
    assert!(log_member(&p, &[qi(1), qi(-2)], &f).is_err());
    assert!(log_member(&p, &[qi(3), qi(-2)], &[f[1].clone(), f[0].clone()]).is_err());
    assert!(LogPartition::new(&[5]).is_err());
}

#[test]
fn catalogued_members_satisfy_the_algebra_inequalities() {
    let mut members = Vec::new();
    for parts in [&[1, 1, 3][..], &[2, 3], &[1, 4]] {
        let fam = log_family(parts);
        members.push(fam.member(&fam.random_point(&mut rng::stream(42, "algebras"))).unwrap());
    }
    members.push(slog34_member(&random_matrix(5, 4, "algebras/phi")).unwrap());
    let mut r = rng::stream(42, "algebras/quintic");
    members.push(slog25_member(&(0..11).map(|_| rng::coeff_q(&mut r)).collect::<Vec<_>>()).unwrap());
    for w in ["(1,2,3;7)", "(0,1,1;2)", "(1,1,2;5)", "(2,3,5;11)", "(1,3,5;8)"] {
        let w: WeightData = w.parse().unwrap();
        members.push(random_combination(3, 3, &eigenspace(3, &w), &mut rng::stream(42, "algebras/tm")));
    }
    for w in &members {
        assert!(w.form().contract(&foliage::extcalc::PolyVField::radial(4)).unwrap().is_zero());
        assert!(w.form().coefficients().all(|c| c.is_zero() || c.homogeneous_degree() == Some(4)));
        let (fix, aut) = (fix_algebra(w).len(), aut_algebra(w).len());
        assert!(aut >= fix);
        if aut > fix {
            assert!(integrating_factor_dim(w) > 0);
        }
    }
}

#[test]
fn first_integrals_have_invariant_factors() {
    let m = model_1_3_5_8();
    let (f, g) = first_integral_1_3_5_8();
    assert!(verify_first_integral(&m.form, &f, &g, 3, 5).unwrap());
    assert!(is_invariant(&m.form, &f).unwrap() && is_invariant(&m.form, &g).unwrap());
    let w = ce_form();
    assert!(verify_first_integral(w.form(), &ce_quartic(), &ce_cubic(), 4, 3).unwrap());
    assert!(is_invariant(w.form(), &ce_quartic()).unwrap() && is_invariant(w.form(), &ce_cubic()).unwrap());
}
