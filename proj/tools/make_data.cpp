// Regenerates the bundled polytope data files from the built-in generators.
#include <fstream>
#include <iostream>

#include "morsecube/generators.hpp"

using namespace morsecube;

static void emit(const std::string& path, const LoadedPolytope& lp, const std::string& title) {
    std::ofstream out(path);
    if (!out) {
        std::cerr << "cannot write " << path << "\n";
        std::exit(1);
    }
    out << "# " << title << "\n";
    out << write_polytope(lp.polytope, lp.colouring);
    std::cout << path << ": " << lp.polytope.facet_count << " facets, "
              << lp.polytope.faces.size() << " faces\n";
}

int main(int argc, char** argv) {
    std::string dir = argc > 1 ? argv[1] : "data";
    emit(dir + "/p4.poly", generate_p4(),
         "ten-facet right-angled 4-polytope, five finite and five ideal vertices");
    emit(dir + "/cell24.poly", generate_quaternion_polytope(QuaternionPolytope::cell24),
         "ideal right-angled 24-cell with its 3-colouring");
    emit(dir + "/cell120.poly", generate_quaternion_polytope(QuaternionPolytope::cell120),
         "compact right-angled 120-cell with its 5-colouring");
    return 0;
}
