#include <map>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tdk/cli.hpp"
#include "tdk/errors.hpp"
#include "tdk/io.hpp"
#include "tdk/onn.hpp"
#include "tdk/twisted.hpp"

namespace py = pybind11;
using namespace tdk;

namespace {

py::int_ to_py(const BigInt& v)
{
    return py::reinterpret_steal<py::int_>(PyLong_FromString(v.get_str().c_str(), nullptr, 10));
}

py::list to_py(const IntVector& v)
{
    py::list out;
    for (const auto& x : v)
        out.append(to_py(x));
    return out;
}

BigInt from_py(const py::handle& h) { return BigInt(py::str(h).cast<std::string>()); }

py::dict group_dict(const FgAbelianGroup& g)
{
    py::list torsion;
    for (const auto& t : g.torsion())
        torsion.append(to_py(t));
    py::dict d;
    d["rank"] = g.rank();
    d["torsion"] = torsion;
    d["text"] = g.to_string();
    return d;
}

py::list groups(const std::vector<FgAbelianGroup>& gs)
{
    py::list out;
    for (const auto& g : gs)
        out.append(group_dict(g));
    return out;
}

}  // namespace

PYBIND11_MODULE(_tdk, m)
{
    m.doc() = "Topological T-duality toolkit: exact integral computations on torus bundles with flux.";

    static py::exception<InputError> input_error(m, "InputError", PyExc_ValueError);
    static py::exception<DomainError> domain_error(m, "DomainError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const InputError& e) {
            py::set_error(input_error, e.what());
        } catch (const DomainError& e) {
            py::set_error(domain_error, e.what());
        }
    });

    m.def("builtin_names", &builtin_names, "Names accepted by {\"builtin\": name}.");

    m.def(
        "space_cohomology",
        [](const std::string& doc) { return groups(parse_space(doc).model->cohomology_groups()); },
        py::arg("space"), "Integral cohomology groups of a space document, degree by degree.");

    m.def(
        "total_cohomology",
        [](const std::string& doc) {
            Pair p = parse_pair(doc);
            std::vector<FgAbelianGroup> gs;
            for (int k = 0; k <= p.bundle->top_degree(); ++k)
                gs.push_back(p.bundle->cohomology(k).group());
            return groups(gs);
        },
        py::arg("pair"), "Integral cohomology of the total space of a pair document.");

    m.def(
        "is_dualizable",
        [](const std::string& doc) { return is_dualizable(parse_pair(doc)).dualizable; }, py::arg("pair"));

    m.def(
        "dualize",
        [](const std::string& doc, std::optional<std::vector<std::vector<long>>> shear) {
            DualizeOptions options;
            if (shear) {
                IntMatrix b(shear->size(), shear->size());
                for (std::size_t i = 0; i < shear->size(); ++i) {
                    if ((*shear)[i].size() != shear->size())
                        throw InputError("shear must be a square matrix", "shear");
                    for (std::size_t j = 0; j < shear->size(); ++j)
                        b(i, j) = (*shear)[i][j];
                }
                options.shear = b;
            }
            return write_triple(dualize(parse_pair(doc), options));
        },
        py::arg("pair"), py::arg("shear") = py::none(),
        "Triple document over a dualizable pair; raises DomainError otherwise.");

    m.def(
        "check_triple",
        [](const std::string& doc) {
            std::map<std::string, bool> out;
            for (const auto& item : validate_triple(parse_triple(doc)).items)
                out[item.name] = item.pass;
            return out;
        },
        py::arg("triple"), "Itemized validity of a triple document.");

    m.def(
        "twisted_dims",
        [](const std::string& doc) {
            Pair p = parse_pair(doc);
            TwistedDims d = twisted_dims(*p.bundle, p.flux);
            return std::make_pair(d.even, d.odd);
        },
        py::arg("pair"), "(even, odd) dimensions of rational twisted cohomology.");

    m.def(
        "verify_iso",
        [](const std::string& doc) {
            IsoReport r = verify_iso(parse_triple(doc));
            py::dict d;
            d["chain_map"] = r.chain_map;
            d["iso"] = r.iso;
            d["side"] = std::make_pair(r.side.even, r.side.odd);
            d["dual"] = std::make_pair(r.dual.even, r.dual.odd);
            d["reason"] = r.reason;
            return d;
        },
        py::arg("triple"), "Checks that the T-transform is a chain isomorphism of twisted complexes.");

    m.def(
        "is_onn",
        [](const std::vector<std::vector<py::int_>>& rows) {
            IntMatrix g(rows.size(), rows.empty() ? 0 : rows[0].size());
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (rows[i].size() != g.cols())
                    throw InputError("ragged matrix", "matrix");
                for (std::size_t j = 0; j < g.cols(); ++j)
                    g(i, j) = from_py(rows[i][j]);
            }
            return is_onn(g);
        },
        py::arg("matrix"), "Exact membership in O(n,n;Z).");

    m.def(
        "flux_vector",
        [](const std::string& doc) { return to_py(parse_pair(doc).flux); }, py::arg("pair"),
        "Flux cochain of a pair document as a list of integers.");

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args, const std::map<std::string, std::string>& files) {
            CliResult r = run_cli(args, [&files](const std::string& name) {
                auto it = files.find(name);
                return it != files.end() ? it->second : read_input_file(name);
            });
            return py::make_tuple(r.exit_code, r.out, r.err);
        },
        py::arg("args"), py::arg("files") = std::map<std::string, std::string>{},
        "Runs one tdk command; `files` supplies in-memory inputs by name.");
}
