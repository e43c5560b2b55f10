use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use run_transform::paths::{for_each_path, pyramid_ascent_count, Path, PathSpec, PyramidMode};
use run_transform::spartitions::*;
use run_transform::transform::catalan_numbers;

fn all(n: usize) -> Vec<SPartition> {
    enumerate_spartitions(n, &SPartitionBudget::default()).unwrap()
}

fn run_indices(pi: &SPartition) -> Vec<usize> {
    (0..pi.blocks().len()).filter(|&i| is_run(&pi.blocks()[i])).collect()
}

#[test]
fn spartition_counts() {
    let counts: Vec<usize> = (0..=7).map(|n| all(n).len()).collect();
    assert_eq!(counts, vec![1, 1, 3, 13, 73, 501, 4051, 37633]);
}

#[test]
fn insert_and_delete_are_inverse() {
    for n in 0..=5 {
        for pi in all(n) {
            for at in 0..=n {
                for len in 1..=2 {
                    let q = pi.insert_run(at, len).unwrap();
                    let run: Vec<u32> = (at as u32 + 1..=(at + len) as u32).collect();
                    let idx = q.blocks().iter().position(|b| *b == run).unwrap();
                    assert_eq!(q.delete_run(idx).unwrap(), pi);
                }
            }
            for idx in run_indices(&pi) {
                let b = pi.blocks()[idx].clone();
                let back = pi.delete_run(idx).unwrap().insert_run(b[0] as usize - 1, b.len()).unwrap();
                assert_eq!(back, pi);
            }
        }
    }
}

fn every_base(pi: &SPartition, out: &mut BTreeSet<String>) {
    let runs = run_indices(pi);
    if runs.is_empty() {
        out.insert(pi.to_string());
    }
    for idx in runs {
        every_base(&pi.delete_run(idx).unwrap(), out);
    }
}

#[test]
fn deletion_order_is_irrelevant() {
    for n in 0..=6 {
        for pi in all(n) {
            let mut bases = BTreeSet::new();
            every_base(&pi, &mut bases);
            assert_eq!(bases.len(), 1, "{pi}");
            assert_eq!(bases.into_iter().next().unwrap(), pi.prune().to_string());
        }
    }
}

#[test]
fn run_deletion_bijection() {
    for n in 0..=7 {
        let mut per_base: HashMap<SPartition, usize> = HashMap::new();
        let mut images = BTreeSet::new();
        for pi in all(n) {
            let seq = pi.run_deletion_sequence();
            assert!(seq.base.is_run_free());
            assert!(validate_sequence(seq.base.size(), &seq.entries));
            assert_eq!(seq.reconstruct().unwrap(), pi);
            assert_eq!(seq.disjoint_from_predecessor(), pi.run_count());
            assert!(images.insert((seq.base.to_string(), seq.entries.clone())));
            *per_base.entry(seq.base).or_insert(0) += 1;
        }
        for (base, count) in per_base {
            let seqs = valid_sequences(base.size(), n - base.size());
            assert_eq!(seqs.len(), count, "base {base}, n {n}");
            for s in seqs {
                let rebuilt = RunDeletionSequence { base: base.clone(), entries: s.clone() }
                    .reconstruct()
                    .unwrap();
                assert_eq!(rebuilt.run_deletion_sequence().entries, s);
            }
        }
    }
}

#[test]
fn validate_sequence_rejects_out_of_range() {
    let e = |start, len| RunEntry { start, len };
    assert!(validate_sequence(0, &[e(1, 2), e(3, 1)]));
    assert!(!validate_sequence(0, &[e(1, 2), e(4, 1)]));
    assert!(!validate_sequence(1, &[e(2, 1), e(2, 1)]));
    assert!(!validate_sequence(1, &[e(0, 1)]));
    assert!(!validate_sequence(1, &[e(1, 0)]));
}

#[test]
fn distributions_depend_only_on_base_size() {
    let mut by_base: BTreeMap<String, (usize, Vec<BTreeMap<usize, u64>>)> = BTreeMap::new();
    for n in 0..=7 {
        for pi in all(n) {
            let base = pi.prune();
            if base.size() > 3 {
                continue;
            }
            let entry = by_base
                .entry(base.to_string())
                .or_insert_with(|| (base.size(), vec![BTreeMap::new(); 8]));
            *entry.1[n].entry(pi.run_count()).or_insert(0) += 1;
        }
    }
    let mut reference: HashMap<usize, &Vec<BTreeMap<usize, u64>>> = HashMap::new();
    let mut bases_per_size = [0; 4];
    for (name, (size, dist)) in &by_base {
        bases_per_size[*size] += 1;
        let r = reference.entry(*size).or_insert(dist);
        assert_eq!(*r, dist, "base {name}");
    }
    assert_eq!(bases_per_size, [1, 0, 1, 5]);
}

#[test]
fn noncrossing_set_partitions_contain_runs() {
    for n in 1..=8 {
        for pi in all(n) {
            if pi.all_blocks_increasing() && pi.is_noncrossing() {
                assert!(pi.run_count() > 0, "{pi}");
            }
        }
    }
}

#[test]
fn empty_base_generates_noncrossing_set_partitions() {
    let catalan = catalan_numbers(8);
    for n in 0..=7 {
        let generated: Vec<SPartition> = all(n).into_iter().filter(|p| p.prune().size() == 0).collect();
        assert_eq!(BigInt::from(generated.len()), catalan[n]);
        for p in &generated {
            assert!(p.all_blocks_increasing() && p.is_noncrossing());
            assert!(family_membership(p, &FamilyId::Fk(0)));
        }
    }
}

#[test]
fn simion_is_a_bijection_carrying_pyramids_to_runs() {
    let catalan = catalan_numbers(8);
    for n in 0..=7 {
        let mut images = BTreeSet::new();
        for_each_path(&PathSpec::dyck(), n, |steps| {
            let p = Path::new(PathSpec::dyck(), steps.to_vec()).unwrap();
            let pi = simion(&p).unwrap();
            assert!(pi.all_blocks_increasing() && pi.is_noncrossing());
            assert_eq!(pi.size(), n);
            assert_eq!(pi.run_count(), pyramid_ascent_count(&PathSpec::dyck(), steps, PyramidMode::All));
            assert_eq!(simion_inverse(&pi).unwrap(), p);
            images.insert(pi.to_string());
        });
        assert_eq!(BigInt::from(images.len()), catalan[n]);
    }
}

#[test]
fn fk_map_lands_in_fk() {
    for k in 2..=3u32 {
        for n in 0..=4 {
            let mut images = BTreeSet::new();
            for_each_path(&PathSpec::n_k(k), n, |steps| {
                let p = Path::new(PathSpec::n_k(k), steps.to_vec()).unwrap();
                let pi = fk_map(&p, k).unwrap();
                assert!(family_membership(&pi, &FamilyId::Fk(k)), "{pi}");
                images.insert(pi.to_string());
            });
            let members = all(n).into_iter().filter(|p| family_membership(p, &FamilyId::Fk(k))).count();
            assert_eq!(images.len(), members);
        }
    }
}

#[test]
fn closure_of_builtin_families() {
    let budget = SPartitionBudget::default();
    for fam in [
        FamilyId::AllSPartitions,
        FamilyId::SetPartitions,
        FamilyId::NoncrossingSPartitions,
        FamilyId::NonoverlappingPartitions,
        FamilyId::PermutationCycles,
        FamilyId::Fk(2),
    ] {
        assert!(closure_check(&fam, 6, &budget).unwrap(), "{}", fam.name());
    }
    assert!(closure_check(&FamilyId::JCompatible(2, Box::new(FamilyId::PermutationCycles)), 6, &budget).unwrap());
    assert!(closure_violation(&FamilyId::NonnestingPartitions, 4, &budget).is_err()
        || closure_violation(&FamilyId::NonnestingPartitions, 4, &budget).unwrap().is_some());
}
