/**
 * @file hopf.hpp
 * @brief Finite commutative Hopf-algebra presentations, point groups of the
 *        associated group schemes, and the primitive-element ideal
 *        (annihilator of the augmentation ideal).
 */
#ifndef LEVELFORGE_HOPF_HPP
#define LEVELFORGE_HOPF_HPP

#include "levelforge/gro.hpp"

namespace levelforge::hopf {

using gro::Budget;
using gro::Ideal;
using poly::Poly;
using poly::PresentedRingPtr;
using poly::RingMap;

class HopfAlgebra;
using HopfPtr = std::shared_ptr<const HopfAlgebra>;

/// A presented ring with comultiplication into its tensor square and counit
/// onto the base.  Coassociativity and the counit axioms are verified
/// symbolically on the generators at construction; axiom checks on
/// generators extend to the whole algebra because all maps are algebra maps.
class HopfAlgebra : public std::enable_shared_from_this<HopfAlgebra> {
public:
    /// comult_images / counit_images: one entry per module variable (the
    /// non-base variables, in ring order), living in square().ring and
    /// base_ring() respectively.
    static HopfPtr create(PresentedRingPtr ring, std::vector<Poly> comult_images,
                          std::vector<Poly> counit_images, std::string name);

    const PresentedRingPtr& ring() const { return ring_; }
    const PresentedRingPtr& square() const { return square_.ring; }
    const std::vector<RingMap>& square_inclusions() const { return square_.inclusions; }
    const RingMap& comult() const { return comult_; }
    const RingMap& counit() const { return counit_; }
    const PresentedRingPtr& base() const { return base_; }
    const std::string& name() const { return name_; }

    int num_module_vars() const { return ring_->nvars() - ring_->num_base_vars(); }
    /// epsilon(module var v), embedded back into the ring.
    Poly counit_in_ring(int v) const;

private:
    HopfAlgebra() = default;
    PresentedRingPtr ring_;
    poly::TensorPower square_;
    RingMap comult_;
    RingMap counit_;
    PresentedRingPtr base_;
    std::string name_;
};

/// T-point of the group scheme: an algebra map O_G -> O_T recorded by the
/// images of the host generators.
struct GroupPoint {
    HopfPtr host;
    PresentedRingPtr target;
    std::vector<Poly> coords;  // one per host variable (module vars first)
};

/// Builds a point and checks that all host relations vanish on the coords.
GroupPoint make_point(HopfPtr host, PresentedRingPtr target, std::vector<Poly> coords,
                      bool verify = true);

/// The identity section: module coordinates are the counit images evaluated
/// at the given base coordinates.
GroupPoint identity_point(const HopfPtr& host, const PresentedRingPtr& target,
                          const std::vector<Poly>& base_coords);

/// Group law on points: coordinates of P + Q are (P (x) Q) applied to the
/// comultiplication of each generator.
GroupPoint point_add(const GroupPoint& P, const GroupPoint& Q);

/// m-fold sum; [0] is the identity point.
GroupPoint point_scale(int64_t m, const GroupPoint& P);

bool points_equal(const GroupPoint& P, const GroupPoint& Q);

/// Augmentation ideal: generated by g - eps(g) over the module generators.
Ideal augmentation_ideal(const HopfPtr& H);

/// Kottwitz-Wake primitive-element ideal: annihilator of the augmentation
/// ideal in O_G.
Ideal primitive_ideal(const HopfPtr& H, const Budget& budget = Budget::from_env());

/// Hopf structure on the n-fold tensor power of H over its base.
HopfPtr tensor_power_hopf(const HopfPtr& H, int n, const std::string& name = "");

}  // namespace levelforge::hopf

#endif
