#include "sweepslice/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace sweepslice {

namespace {

std::string lower_ext(const std::string& path) {
    auto dot = path.rfind('.');
    if (dot == std::string::npos) return "";
    std::string ext = path.substr(dot + 1);
    for (char& c : ext) c = static_cast<char>(std::tolower(c));
    return ext;
}

bool skippable(const std::string& line) {
    for (char c : line) {
        if (c == '#') return true;
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

std::string next_content_line(std::istream& in) {
    std::string line;
    while (std::getline(in, line))
        if (!skippable(line)) return line;
    throw MeshError("unexpected end of file");
}

Surface load_off(std::istream& in) {
    std::string header = next_content_line(in);
    std::istringstream hs(header);
    std::string magic;
    hs >> magic;
    if (magic != "OFF" && magic != "COFF" && magic != "NOFF")
        throw MeshError("not an OFF file (header '" + magic + "')");
    int nv = -1, nf = -1, ne = -1;
    if (!(hs >> nv >> nf >> ne)) {
        std::istringstream cs(next_content_line(in));
        if (!(cs >> nv >> nf >> ne)) throw MeshError("malformed OFF counts");
    }
    if (nv <= 0 || nf <= 0) throw MeshError("OFF file has no geometry");
    std::vector<Vec3> pos(nv);
    for (int i = 0; i < nv; ++i) {
        std::istringstream ls(next_content_line(in));
        if (!(ls >> pos[i].x >> pos[i].y >> pos[i].z))
            throw MeshError("malformed OFF vertex line " + std::to_string(i));
    }
    std::vector<std::array<VertexId, 3>> faces(nf);
    for (int i = 0; i < nf; ++i) {
        std::istringstream ls(next_content_line(in));
        int n = 0;
        if (!(ls >> n)) throw MeshError("malformed OFF face line " + std::to_string(i));
        if (n != 3) throw MeshError("face " + std::to_string(i) + " has " + std::to_string(n) +
                                    " sides; input must be triangulated");
        if (!(ls >> faces[i][0] >> faces[i][1] >> faces[i][2]))
            throw MeshError("malformed OFF face line " + std::to_string(i));
    }
    return Surface::from_positions(std::move(pos), std::move(faces));
}

Surface load_obj(std::istream& in) {
    std::vector<Vec3> pos;
    std::vector<std::array<VertexId, 3>> faces;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag == "v") {
            Vec3 p;
            if (!(ls >> p.x >> p.y >> p.z)) throw MeshError("malformed OBJ vertex, line " + std::to_string(lineno));
            pos.push_back(p);
        } else if (tag == "f") {
            std::vector<int> idx;
            std::string tok;
            while (ls >> tok) {
                // accept v, v/t, v/t/n, v//n
                size_t slash = tok.find('/');
                int v = std::stoi(slash == std::string::npos ? tok : tok.substr(0, slash));
                if (v < 0) v = static_cast<int>(pos.size()) + v + 1;
                idx.push_back(v - 1);
            }
            if (idx.size() != 3)
                throw MeshError("face with " + std::to_string(idx.size()) +
                                " sides at line " + std::to_string(lineno) +
                                "; input must be triangulated");
            faces.push_back({idx[0], idx[1], idx[2]});
        }
    }
    if (faces.empty()) throw MeshError("OBJ file has no faces");
    return Surface::from_positions(std::move(pos), std::move(faces));
}

}  // namespace

MeshFormat format_from_path(const std::string& path) {
    std::string ext = lower_ext(path);
    if (ext == "off") return MeshFormat::off;
    if (ext == "obj") return MeshFormat::obj;
    throw MeshError("cannot infer mesh format from '" + path + "' (expected .off or .obj)");
}

Surface load_mesh(const std::string& path) { return load_mesh(path, format_from_path(path)); }

Surface load_mesh(const std::string& path, MeshFormat format) {
    std::ifstream in(path);
    if (!in) throw MeshError("cannot open '" + path + "'");
    return format == MeshFormat::off ? load_off(in) : load_obj(in);
}

void save_mesh(const Surface& surface, const std::string& path) {
    save_mesh(surface, path, format_from_path(path));
}

void save_mesh(const Surface& surface, const std::string& path, MeshFormat format) {
    if (!surface.has_positions())
        throw MeshError("surface has no vertex positions; cannot export");
    std::ofstream out(path);
    if (!out) throw MeshError("cannot write '" + path + "'");
    out.precision(17);
    const auto& pos = surface.positions();
    if (format == MeshFormat::off) {
        out << "OFF\n" << surface.vertex_count() << " " << surface.face_count() << " 0\n";
        for (const auto& p : pos) out << p.x << " " << p.y << " " << p.z << "\n";
        for (FaceId f = 0; f < surface.face_count(); ++f) {
            const auto& tri = surface.face(f);
            out << "3 " << tri[0] << " " << tri[1] << " " << tri[2] << "\n";
        }
    } else {
        for (const auto& p : pos) out << "v " << p.x << " " << p.y << " " << p.z << "\n";
        for (FaceId f = 0; f < surface.face_count(); ++f) {
            const auto& tri = surface.face(f);
            out << "f " << tri[0] + 1 << " " << tri[1] + 1 << " " << tri[2] + 1 << "\n";
        }
    }
}

void save_polylines_obj(const Surface& surface,
                        const std::vector<std::vector<VertexId>>& polylines,
                        const std::string& path) {
    if (!surface.has_positions()) throw MeshError("surface has no vertex positions; cannot export");
    std::ofstream out(path);
    if (!out) throw MeshError("cannot write '" + path + "'");
    out.precision(17);
    const auto& pos = surface.positions();
    std::vector<int> remap(surface.vertex_count(), -1);
    int count = 0;
    for (const auto& line : polylines)
        for (VertexId v : line)
            if (remap[v] < 0) {
                remap[v] = ++count;
                out << "v " << pos[v].x << " " << pos[v].y << " " << pos[v].z << "\n";
            }
    for (const auto& line : polylines) {
        out << "l";
        for (VertexId v : line) out << " " << remap[v];
        out << "\n";
    }
}

void save_segments_obj(const std::vector<std::pair<Vec3, Vec3>>& segments,
                       const std::string& path) {
    std::ofstream out(path);
    if (!out) throw MeshError("cannot write '" + path + "'");
    out.precision(17);
    for (const auto& [a, b] : segments) {
        out << "v " << a.x << " " << a.y << " " << a.z << "\n";
        out << "v " << b.x << " " << b.y << " " << b.z << "\n";
    }
    for (size_t i = 0; i < segments.size(); ++i) out << "l " << 2 * i + 1 << " " << 2 * i + 2 << "\n";
}

}  // namespace sweepslice
