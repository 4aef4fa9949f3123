use num_complex::Complex64;
use pdm_coherent::coherent::{eigenstate_residual, make_coherent, uncertainty_report};
use pdm_coherent::ladder::{annihilation_residual, apply_a, second_solution, second_solution_residual};
use pdm_coherent::numerics::l2_norm;
use pdm_coherent::pct::{pdm_eigenfunction, working_grid};
use pdm_coherent::spectral::{discretize, lowest_eigenvalues};
use pdm_coherent::{build_ladder, Grid, MassProfile, PdmProblem, ProfileKind, ReferenceOscillator};

const SETTINGS: [(ProfileKind, f64); 5] = [
    (ProfileKind::Constant, 0.0),
    (ProfileKind::Case1, 0.5),
    (ProfileKind::Case1, 2.0),
    (ProfileKind::Case2, 0.25),
    (ProfileKind::Case2, 1.0),
];
const REFERENCES: [ReferenceOscillator; 2] = [ReferenceOscillator::Harmonic, ReferenceOscillator::CarinenaNonlinear];

fn problem(kind: ProfileKind, gamma: f64, r: ReferenceOscillator) -> PdmProblem<f64> {
    PdmProblem::new(MassProfile::new(kind, gamma).unwrap(), r)
}

#[test]
fn ground_states_are_annihilated() {
    for r in REFERENCES {
        for (kind, gamma) in SETTINGS {
            let p = problem(kind, gamma, r);
            let ls = build_ladder(&p).unwrap();
            // The nonlinear Case 1 ground state sits at 2e-6 with 2001 nodes.
            let g = working_grid(&p, 4001).unwrap();
            let u = pdm_eigenfunction(&p, 0, &g).unwrap();
            let res = annihilation_residual(&ls, &u).unwrap();
            assert!(res < 1e-6, "{r:?} {kind} {gamma}: {res:e}");
        }
    }
}

#[test]
fn coherent_states_are_eigenstates() {
    let alphas = [
        Complex64::new(0.3, 0.0),
        Complex64::new(0.0, 0.4),
        Complex64::new(0.3, 0.2),
    ];
    for r in REFERENCES {
        for (kind, gamma) in SETTINGS {
            let p = problem(kind, gamma, r);
            let ls = build_ladder(&p).unwrap();
            let g = working_grid(&p, 2001).unwrap();
            for a in alphas {
                let cs = make_coherent(&ls, a, &g).unwrap();
                let res = eigenstate_residual(&cs, &ls).unwrap();
                assert!(res < 1e-5, "{r:?} {kind} {gamma} {a}: {res:e}");
                let direct = apply_a(&ls, &cs.state).unwrap();
                let diff = (&direct - &cs.state.scale(a)).unwrap();
                assert!(l2_norm(&diff).unwrap() < 1e-5);
            }
        }
    }
}

#[test]
fn second_solution_for_cosh_mass() {
    let p = problem(ProfileKind::Case2, 0.5, ReferenceOscillator::Harmonic);
    let ls = build_ladder(&p).unwrap();
    let g = working_grid(&p, 2001).unwrap();
    let u = pdm_eigenfunction(&p, 0, &g).unwrap();
    let sol = second_solution(&u, &p.profile).unwrap();
    let (res, _) = second_solution_residual(&ls, &sol).unwrap();
    assert!(res < 1e-4, "{res:e}");
}

#[test]
fn unit_gamma_and_tiny_gamma_reduce_to_constant_mass() {
    let alpha = Complex64::new(0.5, 0.0);
    for r in REFERENCES {
        let reference = problem(ProfileKind::Constant, 0.0, r);
        let g = working_grid(&reference, 2001).unwrap();
        let base = make_coherent(&build_ladder(&reference).unwrap(), alpha, &g).unwrap();
        for (kind, gamma) in [(ProfileKind::Case1, 1.0), (ProfileKind::Case2, 1e-8)] {
            let p = problem(kind, gamma, r);
            let cs = make_coherent(&build_ladder(&p).unwrap(), alpha, &g).unwrap();
            let gap = cs.state.sup_distance(&base.state).unwrap();
            assert!(gap < 1e-8, "{r:?} {kind}: {gap:e}");
        }
    }
}

#[test]
fn spectrum_does_not_depend_on_profile() {
    let g = Grid::<f64>::new(-10.0, 10.0, 2001).unwrap();
    let levels: Vec<Vec<f64>> = [
        (ProfileKind::Constant, 0.0),
        (ProfileKind::Case1, 2.0),
        (ProfileKind::Case2, 0.75),
    ]
    .iter()
    .map(|&(k, gm)| {
        lowest_eigenvalues(
            &discretize(&problem(k, gm, ReferenceOscillator::Harmonic), &g).unwrap(),
            3,
        )
        .unwrap()
    })
    .collect();
    for other in &levels[1..] {
        for (a, b) in levels[0].iter().zip(other) {
            assert!((a - b).abs() < 2e-3);
        }
    }
}

#[test]
fn single_precision_pipeline_runs() {
    let p = PdmProblem::new(
        MassProfile::<f32>::new(ProfileKind::Case1, 2.0).unwrap(),
        ReferenceOscillator::Harmonic,
    );
    let ls = build_ladder(&p).unwrap();
    let g = working_grid(&p, 801).unwrap();
    let cs = make_coherent(&ls, num_complex::Complex32::new(0.3, 0.2), &g).unwrap();
    let u = uncertainty_report(&cs, &ls).unwrap();
    assert!((u.product - 0.25).abs() < 1e-3, "{}", u.product);
    assert!((u.mean_phi - 0.3 * 2f32.sqrt()).abs() < 1e-3);
}
