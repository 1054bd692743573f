use proptest::prelude::*;

use twinwidth::codec::{codec_decode, codec_encode, payload_bits, payload_budget, CodecBlob};
use twinwidth::constructions::{cycle, iterated_lift, path};
use twinwidth::exact::ExactSolver;
use twinwidth::labeling::{build_labels, decode_adjacency, LabelSet};
use twinwidth::{greedy_parallel_sequence, sequentialize, verify_parallel, Color, Trigraph};

fn graph(max_n: usize) -> impl Strategy<Value = Trigraph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(0u8..6, n * n.saturating_sub(1) / 2).prop_map(move |codes| {
            let mut g = Trigraph::new(n);
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    match codes[k] {
                        0..=2 => {}
                        5 => g.add_edge(u, v, Color::Red).unwrap(),
                        _ => g.add_edge(u, v, Color::Black).unwrap(),
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

/// Bit count of the payload layout, summed field by field.
fn counted_bits(n: usize, d: usize) -> usize {
    let b = (n as f64).log2().ceil() as usize;
    let record = b + b + b + 2 + d * (b + 2 + 2);
    b + (n - 1) * record
}

proptest! {
    #[test]
    fn codec_round_trips(g in graph(9)) {
        let (d, seq) = ExactSolver::default().solve(&g).unwrap();
        let blob = codec_encode(&g, &seq, d).unwrap();
        prop_assert_eq!(blob.payload.len(), counted_bits(g.len(), d));
        prop_assert!(blob.payload.len() <= payload_budget(g.len(), d));
        prop_assert_eq!(codec_decode(&blob).unwrap(), g);
        prop_assert_eq!(CodecBlob::from_bytes(&blob.to_bytes()).unwrap(), blob);
    }

    #[test]
    fn slack_in_d_still_round_trips(g in graph(8), extra in 0usize..3) {
        let (d, seq) = ExactSolver::default().solve(&g).unwrap();
        let blob = codec_encode(&g, &seq, d + extra).unwrap();
        prop_assert_eq!(blob.payload.len(), payload_bits(g.len(), d + extra));
        prop_assert_eq!(codec_decode(&blob).unwrap(), g);
    }

    #[test]
    fn labels_decode_every_pair(g in graph(10), seed in any::<u64>()) {
        let mut bound = g.max_red_degree();
        let pseq = loop {
            if let Ok(p) = greedy_parallel_sequence(&g, bound, Some(seed)) {
                break p;
            }
            bound += 1;
        };
        let d = verify_parallel(&g, &pseq).width;
        let set = build_labels(&g, &pseq, d).unwrap();
        for x in g.vertices() {
            for y in g.vertices() {
                if x != y {
                    prop_assert_eq!(set.query(x, y).unwrap().relation(), g.relation(x, y));
                }
            }
        }
    }
}

#[test]
fn corrupted_payloads_are_rejected() {
    let g = cycle(6);
    let (d, seq) = ExactSolver::default().solve(&g).unwrap();
    let blob = codec_encode(&g, &seq, d).unwrap();
    let mut long = blob.clone();
    long.payload.push(false);
    assert!(codec_decode(&long).is_err());
    let mut bytes = blob.to_bytes();
    bytes[0] = b'X';
    assert!(CodecBlob::from_bytes(&bytes).is_err());
    let mut bytes = blob.to_bytes();
    bytes.pop();
    assert!(CodecBlob::from_bytes(&bytes).is_err());
}

#[test]
fn encoder_rejects_bad_sequences() {
    let g = path(5);
    let (d, seq) = ExactSolver::default().solve(&g).unwrap();
    let mut short = seq.clone();
    short.steps.pop();
    assert!(codec_encode(&g, &short, d).is_err());
    let mut gone = seq.clone();
    gone.steps[1] = gone.steps[0];
    assert!(codec_encode(&g, &gone, d).is_err());
}

#[test]
fn label_file_round_trip_on_a_lift() {
    let chain = iterated_lift(3, 5);
    let g = chain.last().all_red();
    let d = verify_parallel(&g, &chain.witness).width;
    let set = build_labels(&g, &chain.witness, d).unwrap();
    let mut buf = Vec::new();
    set.write_to(&mut buf).unwrap();
    let back = LabelSet::read_from(buf.as_slice()).unwrap();
    assert_eq!(back.labels, set.labels);
    let (a, b) = (&back.labels[0].1, &back.labels[5].1);
    assert_eq!(
        decode_adjacency(&back.scheme, a, b).unwrap().relation(),
        g.relation(back.labels[0].0, back.labels[5].0)
    );
    assert!(LabelSet::read_from(&buf[..buf.len() - 1]).is_err());
}

#[test]
fn lifted_graph_codec() {
    let chain = iterated_lift(5, 9);
    let g = chain.last().clone();
    let seq = sequentialize(&g, &chain.witness).unwrap();
    let d = twinwidth::verify_sequence(&g, &seq).width;
    let blob = codec_encode(&g, &seq, d).unwrap();
    assert!(blob.payload.len() <= payload_budget(128, d));
    assert_eq!(codec_decode(&blob).unwrap(), g);
}
