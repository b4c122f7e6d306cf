#pragma once

#include "ghzent/common.hpp"
#include "ghzent/qlinalg.hpp"
#include "ghzent/partitions.hpp"
#include "ghzent/ghz_family.hpp"
#include "ghzent/classify.hpp"
#include "ghzent/detect.hpp"
#include "ghzent/molecules.hpp"
#include "ghzent/activation.hpp"
#include "ghzent/io.hpp"
#include "ghzent/report.hpp"
#include "ghzent/datasets.hpp"
