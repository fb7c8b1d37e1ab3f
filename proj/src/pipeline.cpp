#include "geokit/pipeline.h"

#include <sstream>

#include "geokit/bezulate.h"
#include "geokit/coons.h"
#include "geokit/io.h"
#include "geokit/partition.h"

namespace geokit {

namespace {

[[noreturn]] void stage_error(const char* stage, const ClosedCurve& curve, const Error& cause) {
    std::ostringstream msg;
    msg << stage << ": " << cause.what() << "; curve: " << curve_to_json(curve);
    throw PipelineError(msg.str());
}

}  // namespace

PatchSetDocument region_to_patches(const std::vector<ClosedCurve>& curves) {
    PatchSetDocument doc;
    doc.input_curves = curves;
    if (curves.empty()) return doc;

    for (const ClosedCurve& curve : curves) {
        if (!is_simple(curve)) stage_error("validate", curve, DomainError("curve is not simple"));
    }

    PartitionResult parted;
    try {
        parted = partition_detailed(curves);
    } catch (const Error& e) {
        stage_error("partition", curves.front(), e);
    }
    doc.regions = parted.pieces;
    doc.chords = parted.chords;

    for (std::size_t region_index = 0; region_index < parted.pieces.size(); ++region_index) {
        const ClosedCurve& region = parted.pieces[region_index];

        BezulateResult bez;
        try {
            bez = bezulate_detailed(region);
        } catch (const Error& e) {
            stage_error("bezulate", region, e);
        }
        doc.chords.insert(doc.chords.end(), bez.chords.begin(), bez.chords.end());

        for (std::size_t piece_index = 0; piece_index < bez.pieces.size(); ++piece_index) {
            std::vector<ClosedCurve> ready;
            try {
                ready = split_reflex_nodes(bez.pieces[piece_index]);
            } catch (const Error& e) {
                stage_error("split_reflex_nodes", bez.pieces[piece_index], e);
            }
            for (const ClosedCurve& piece : ready) {
                NondegenerateResult repaired;
                try {
                    repaired = make_nondegenerate_detailed(piece);
                } catch (const Error& e) {
                    stage_error("make_nondegenerate", piece, e);
                }
                for (std::size_t k = 0; k < repaired.kept.size(); ++k) {
                    doc.patches.push_back(repaired.kept[k]);
                    std::ostringstream history;
                    history << "c" << region_index << ".p" << piece_index << "."
                            << repaired.history[k];
                    doc.provenance.push_back({static_cast<int>(region_index), history.str()});
                }
                doc.discarded.insert(doc.discarded.end(), repaired.discarded.begin(),
                                     repaired.discarded.end());
            }
        }
    }
    return doc;
}

PatchSetDocument place_in_3d(const PatchSetDocument& doc, const Transform3& transform) {
    if (!transform.is_rigid())
        throw DomainError("place_in_3d: transform is not rigid up to uniform scale");
    PatchSetDocument out = doc;
    for (Patch& patch : out.patches) patch = transformed(patch, transform);
    for (Patch& patch : out.discarded) patch = transformed(patch, transform);

    const Point3 o = doc.plane.origin;
    auto rotate_only = [&transform, &o](Point3 axis) {
        const Point3 moved = transform.apply(o + axis) - transform.apply(o);
        const double n = length(moved);
        return n > 0.0 ? (1.0 / n) * moved : moved;
    };
    out.plane.origin = transform.apply(o);
    out.plane.axis_u = rotate_only(doc.plane.axis_u);
    out.plane.axis_v = rotate_only(doc.plane.axis_v);
    return out;
}

}  // namespace geokit
