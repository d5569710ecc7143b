use num_bigint::{BigInt, BigUint};
use polysym::polycore::{ratio, Rational};
use polysym_cli::polyfile::{Kind, PolyFile};
use proptest::prelude::*;

fn entry() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=6).prop_map(|(a, b)| ratio(a, b))
}

prop_compose! {
    fn polyfile()(
        h in any::<bool>(),
        n in 1usize..=4,
        m in 1usize..=6,
        seed in prop::collection::vec(entry(), 64),
        lin in prop::collection::vec(any::<bool>(), 6),
        extras in (any::<bool>(), any::<bool>(), any::<bool>()),
    ) -> PolyFile {
        let kind = if h { Kind::H } else { Kind::V };
        let rows: Vec<Vec<Rational>> = (0..m)
            .map(|i| {
                let mut r: Vec<Rational> = (0..=n).map(|j| seed[(i * 7 + j) % 64].clone()).collect();
                if kind == Kind::V {
                    r[0] = Rational::from_integer(BigInt::from((i % 3 != 0) as u8));
                }
                r
            })
            .collect();
        let mut f = PolyFile::new(kind, rows, n + 1);
        if h {
            f.linearity = (0..m).filter(|&i| lin[i]).collect();
        }
        if extras.0 {
            f.blocks = Some(vec![1; n]);
        }
        if extras.1 {
            f.maximize = Some(seed[..=n].to_vec());
        }
        if extras.2 {
            f.orbit_sizes = Some((0..m).map(|i| BigUint::from(i + 1)).collect());
            f.sum_bounds = Some(vec![(BigInt::from(-1), BigInt::from(3)); n]);
        }
        f
    }
}

proptest! {
    #[test]
    fn write_then_parse_is_identity(f in polyfile()) {
        let text = f.to_string();
        let back = PolyFile::parse(&text).unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(back.to_string(), text);
    }
}

#[test]
fn comments_and_name_lines_are_skipped() {
    let text = "* produced elsewhere\nsquare\nH-representation\nbegin\n* rows follow\n2 2 integer\n1 -1\n0 1\nend\n";
    let f = PolyFile::parse(text).unwrap();
    assert_eq!(f.rows.len(), 2);
    assert_eq!(PolyFile::parse(&f.to_string()).unwrap(), f);
}
