mod common;

use collapsibility::cnf::Literal;
use collapsibility::collapse::check_certificate;
use collapsibility::gadgets::*;
use collapsibility::homology::is_point_like;
use collapsibility::search::PrefixSearchConfig;
use collapsibility::Face;
use common::*;

fn certificates_replay(g: &GadgetInstance) {
    assert!(!g.scripted_certificates.is_empty());
    for c in &g.scripted_certificates {
        check_certificate(&c.start, &c.certificate).unwrap_or_else(|e| panic!("{}: {e}", c.name));
        assert_eq!(replay_oracle(&c.start, &c.certificate.steps).unwrap(), faces_of(&c.certificate.target), "{}", c.name);
    }
}

fn free(g: &GadgetInstance) -> Faces {
    free_faces_oracle(g.complex())
}

fn named(g: &GadgetInstance, names: &[&str]) -> Faces {
    names.iter().map(|n| g.face(n).unwrap().vertices().to_vec()).collect()
}

#[test]
fn thick_wall_variants() {
    let full = thick_wall(ThickWallVariant::Full).unwrap();
    certificates_replay(&full);
    assert_eq!(full.complex().dim(), Some(3));
    assert!(is_point_like(full.complex()));
    for (v, cert) in [
        (ThickWallVariant::CollapsedTo01Free, "collapse:01_free"),
        (ThickWallVariant::CollapsedKeepRectangles, "collapse:keep_rectangles"),
    ] {
        let g = thick_wall(v).unwrap();
        assert_eq!(g.complex(), &full.certificate(cert).unwrap().certificate.target);
        assert!(g.complex().dim().unwrap() <= 2);
    }
    let corner = thick_wall(ThickWallVariant::CollapsedTo01Free).unwrap();
    // Edge 01 is left dangling: its end 0 is a free vertex.
    let e = corner.face("01").unwrap();
    assert!(free(&corner).contains(&vec![e.vertices()[0]]));
}

#[test]
fn rooms_and_houses() {
    let thin = bing_room(WallKind::Thin).unwrap();
    assert_eq!(thin.complex().euler_characteristic(), 0);
    let collapsed = bing_room(WallKind::Collapsed).unwrap();
    certificates_replay(&collapsed);
    assert!(free(&collapsed).contains(collapsed.face("x").unwrap().vertices()));

    let house = bing_house(WallKind::Thin, WallKind::Thin).unwrap();
    assert!(free(&house).is_empty());
    assert!(is_point_like(house.complex()));
    let both = bing_house(WallKind::Collapsed, WallKind::Collapsed).unwrap();
    certificates_replay(&both);
    assert_eq!(both.complex().dim(), Some(2));
}

#[test]
fn three_room_house_contract() {
    let g = three_room_house(true).unwrap();
    certificates_replay(&g);
    assert_eq!(free(&g), named(&g, &["x1", "x2", "x3"]));
    assert!(is_point_like(g.complex()));
    let solid = three_room_house(false).unwrap();
    assert_eq!(solid.complex().dim(), Some(3));
}

#[test]
fn literal_gadget_certificates() {
    let g = literal_gadget(2).unwrap();
    certificates_replay(&g);
    let names: Vec<&str> = g.scripted_certificates.iter().map(|c| c.name.as_str()).collect();
    for n in ["literal1:x2", "literal2:x2", "literal1:~x2", "literal2:~x2"] {
        assert!(names.contains(&n), "{n} missing from {names:?}");
    }
    for l in ["x2", "~x2"] {
        g.face(&format!("e({l})")).unwrap();
        g.face(&format!("f({l})")).unwrap();
        g.path(&format!("p({l})")).unwrap();
        g.region(&format!("X({l})")).unwrap();
    }
    assert!(is_point_like(g.complex()));
}

#[test]
fn conjunction_gadget_contract() {
    for n in 1..=3 {
        let g = conjunction_gadget(n).unwrap();
        certificates_replay(&g);
        assert_eq!(free(&g), named(&g, &["e_and"]), "n = {n}");
        assert!(is_point_like(g.complex()));
    }
    assert!(conjunction_gadget(0).is_err());
}

#[test]
fn clause_gadget_contract() {
    let c = [Literal::pos(1), Literal::neg(2), Literal::pos(3)];
    let g = clause_gadget(1, c).unwrap();
    certificates_replay(&g);
    let edges = named(&g, &["(x1,c2)", "(~x2,c2)", "(x3,c2)"]);
    assert_eq!(free(&g), edges);
    assert!(clause_gadget(0, [Literal::pos(1), Literal::neg(1), Literal::pos(3)]).is_err());
}

#[test]
fn bl_gadget_contract() {
    for clauses in [vec![], vec![0], vec![0, 2, 5]] {
        let g = bl_gadget(Literal::neg(4), &clauses).unwrap();
        certificates_replay(&g);
        assert_eq!(free(&g), named(&g, &["e(~x4)"]), "clauses {clauses:?}");
        for j in &clauses {
            g.face(&format!("(~x4,c{})", j + 1)).unwrap();
        }
    }
}

#[test]
fn disk_gadget_and_disk_faces() {
    let g = disk_gadget(1).unwrap();
    certificates_replay(&g);
    let d = disk_faces(9, &[1, 2, 3, 4]);
    assert_eq!(d.len(), 4);
    assert!(d.contains(&Face::of(&[1, 4, 9])));
}

#[test]
fn vertex_keys_cover_every_vertex() {
    let g = bl_gadget(Literal::pos(1), &[0]).unwrap();
    for v in g.complex().vertices() {
        assert!(g.vertex_keys.contains_key(&v), "vertex {v} has no key");
    }
}

#[test]
fn prefix_properties_within_a_small_budget() {
    for p in [PrefixProperty::ClauseStart, PrefixProperty::BlStart, PrefixProperty::AndFirst] {
        let r = check_prefix_property(p, PrefixSearchConfig { max_depth: 6, node_budget: 5_000 }).unwrap();
        assert!(r.counterexample.is_none(), "{}: {r}", p.name());
        assert!(r.complete_depth >= 2, "{}: {r}", p.name());
    }
}

#[test]
fn literal_lock_has_a_short_counterexample() {
    let r = check_prefix_property(PrefixProperty::LiteralLock, PrefixSearchConfig { max_depth: 4, node_budget: 200_000 }).unwrap();
    let steps = r.counterexample.expect("known counterexample of length 4");
    assert_eq!(steps.len(), 4);
    let (g, _) = PrefixProperty::LiteralLock.gadget().unwrap();
    let bad = violation(PrefixProperty::LiteralLock, &g).unwrap();
    assert_eq!(collapsibility::search::first_violation(g.complex(), &steps, |v| bad(v)).unwrap(), Some(4));
}
