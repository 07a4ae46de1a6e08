use crate::graded_ring::RingPresentation;

use super::CatalogError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// Oriented Grassmannian of planes in `R^{2n}`.
    LaiEven,
    /// Oriented Grassmannian of planes in `R^{2n+1}`.
    OddG2,
    /// Pairs of an oriented plane and an orthogonal unit vector in `R^{2n}`.
    W21,
}

impl std::str::FromStr for Family {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lai_even" => Ok(Family::LaiEven),
            "odd_g2" => Ok(Family::OddG2),
            "w21" => Ok(Family::W21),
            other => Err(CatalogError::UnknownFamily(other.to_string())),
        }
    }
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::LaiEven => "lai_even",
            Family::OddG2 => "odd_g2",
            Family::W21 => "w21",
        }
    }

    pub fn supported(self) -> std::ops::RangeInclusive<u32> {
        match self {
            Family::LaiEven | Family::OddG2 => 2..=8,
            Family::W21 => 3..=8,
        }
    }

    /// Name of the instance in the built-in document.
    pub fn ring_name(self, n: u32) -> String {
        match self {
            Family::LaiEven => format!("G{}_2", 2 * n),
            Family::OddG2 => format!("G{}_2", 2 * n + 1),
            Family::W21 => format!("W{}", 2 * n),
        }
    }
}

/// Concrete presentation of a family member.
pub fn instantiate_family(family: Family, n: u32) -> Result<RingPresentation, CatalogError> {
    if !family.supported().contains(&n) {
        return Err(CatalogError::Unsupported { family: family.name(), n });
    }
    let name = family.ring_name(n);
    let p = match family {
        Family::LaiEven => {
            // kappa*Omt^{n-1} = (-1)^{n-1} mu and Omt^{2n-2} = 2(-1)^{n-1} mu.
            // With (-1)^n instead, kappa*Om = mu and Om = 2kappa - Omt^{n-1}
            // would force 2mu = 0.
            let s = if n.is_multiple_of(2) { "+" } else { "-" };
            let kappa_sq = if n % 2 == 1 { "kappa^2 - mu" } else { "kappa^2" };
            RingPresentation::parse(
                &name,
                &[("Omt", 2), ("kappa", 2 * n - 2), ("Om", 2 * n - 2), ("mu", 4 * n - 4)],
                &[
                    &format!("Omt^{n} - 2*kappa*Omt"),
                    &format!("Om + Omt^{} - 2*kappa", n - 1),
                    &format!("kappa*Omt^{} {s} mu", n - 1),
                    "kappa*Om - mu",
                    kappa_sq,
                    &format!("Omt^{} {s} 2*mu", 2 * n - 2),
                    "Om^2 - 2*mu",
                ],
                4 * n - 4,
            )
        }
        Family::OddG2 => RingPresentation::parse(
            &name,
            &[("x2", 2), (&format!("x{}", 2 * n), 2 * n)],
            &[&format!("x2^{n} - 2*x{}", 2 * n), &format!("x{}^2", 2 * n)],
            4 * n - 2,
        ),
        Family::W21 => {
            let (a, b) = (format!("xb{}", 2 * n - 2), format!("xb{}", 2 * n - 1));
            RingPresentation::parse(
                &name,
                &[("xb2", 2), (&a, 2 * n - 2), (&b, 2 * n - 1)],
                &[&format!("xb2^{} - 2*{a}", n - 1), &format!("{a}^2"), &format!("{b}^2")],
                6 * n - 7,
            )
        }
    };
    Ok(p.expect("family presentations are well formed"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded_ring::GradedRing;

    #[test]
    fn lai_relations_have_the_right_signs() {
        let even = instantiate_family(Family::LaiEven, 4).unwrap();
        let rels: Vec<String> = even.relations().iter().map(|r| even.format_polynomial(r)).collect();
        assert!(rels.contains(&"Omt^3*kappa + mu".to_string()), "{rels:?}");
        assert!(rels.contains(&"Omt^6 + 2*mu".to_string()), "{rels:?}");
        assert!(rels.contains(&"kappa^2".to_string()));
        let odd = instantiate_family(Family::LaiEven, 3).unwrap();
        let rels: Vec<String> = odd.relations().iter().map(|r| odd.format_polynomial(r)).collect();
        assert!(rels.contains(&"Omt^2*kappa - mu".to_string()), "{rels:?}");
        assert!(rels.contains(&"Omt^4 - 2*mu".to_string()), "{rels:?}");
        assert!(rels.contains(&"kappa^2 - mu".to_string()));
    }

    #[test]
    fn lai_relations_are_consistent() {
        // Every stated identity holds in the quotient: kappa*Om = mu and Om^2 = 2mu
        // follow from the others, and mu generates the top group.
        for n in 2..=8 {
            let r = GradedRing::new(instantiate_family(Family::LaiEven, n).unwrap());
            let mu = r.generator_class("mu").unwrap();
            assert_eq!(r.group(4 * n - 4), crate::abelian::AbelianGroup::free(1));
            assert_eq!(mu.coordinates().len(), 1);
            assert_eq!(num_traits::Signed::abs(&mu.coordinates()[0]), 1.into(), "n={n}");
            let om = r.generator_class("Om").unwrap();
            let kappa = r.generator_class("kappa").unwrap();
            assert_eq!(r.product(&kappa, &om).unwrap(), mu);
            let two_mu = r.add(&mu, &mu).unwrap();
            assert_eq!(r.product(&om, &om).unwrap(), two_mu);
        }
    }

    #[test]
    fn lai_groups_match_cp_times_sphere() {
        for n in 2..=6 {
            let r = GradedRing::new(instantiate_family(Family::LaiEven, n).unwrap());
            for k in 0..=4 * n - 4 {
                let expected = match (k % 2, k == 2 * n - 2) {
                    (1, _) => 0,
                    (_, true) => 2,
                    _ => 1,
                };
                assert_eq!(r.group(k), crate::abelian::AbelianGroup::free(expected), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn family_examples() {
        let p = instantiate_family(Family::OddG2, 5).unwrap();
        assert_eq!(p.top_degree(), 18);
        assert_eq!(p.format_polynomial(&p.relations()[0]), "x2^5 - 2*x10");
        let w = instantiate_family(Family::W21, 4).unwrap();
        assert_eq!(w.top_degree(), 17);
        assert_eq!(w.names(), vec!["xb2", "xb6", "xb7"]);
        assert!(instantiate_family(Family::W21, 2).is_err());
        assert!(instantiate_family(Family::OddG2, 9).is_err());
    }
}
