//! Support-genus bounds: a hand-built fact base, then the bundled trefoil mountain.
//!
//! Run with `cargo run --example support_genus`.

use sgkit::fixtures;
use sgkit::sgengine::{derive_bounds, replay, FactKind, LegendrianDesc, SGFact, SGFactBase};
use sgkit::Sign;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut base = SGFactBase::new();
    let l = base.add_knot("L", LegendrianDesc::new("T(2,3)", 1, 0))?;
    base.add_fact(SGFact::new(FactKind::PageWitness { knot: l, genus: 1 }).with_note("sits on a genus-one page"))?;
    base.add_fact(SGFact::new(FactKind::PositiveTb { knot: l }))?;
    let s = base.add_stabilization("S+(L)", l, Sign::Plus)?;
    let ss = base.add_stabilization("S-S+(L)", s, Sign::Minus)?;

    let derivation = derive_bounds(&base)?;
    for (id, name, desc) in base.knots() {
        println!("{name:>8}  {desc}  sg ∈ {}", derivation.interval(id));
    }
    println!("\nwhy S-S+(L) has an upper bound:\n{}", derivation.render_trace(&base, ss));
    replay(&base, &derivation.steps)?;

    // the bundled mountain: stabilizations of the max-tb right-handed trefoil
    let facts = fixtures::trefoil_facts().resolve()?.facts.expect("bundled facts");
    let derivation = derive_bounds(&facts)?;
    let exact = facts.knots().filter(|(id, _, _)| derivation.interval(*id).is_exact()).count();
    println!("\ntrefoil mountain: {} knots, {} with exact support genus", facts.knot_count(), exact);
    for (id, name, desc) in facts.knots().filter(|(_, _, d)| d.tb >= -2) {
        println!("{name:>14}  {desc}  sg ∈ {}", derivation.interval(id));
    }
    Ok(())
}
