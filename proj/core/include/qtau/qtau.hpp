#pragma once

#include "qtau/common.hpp"
#include "qtau/connection.hpp"
#include "qtau/fredholm.hpp"
#include "qtau/maya.hpp"
#include "qtau/nekrasov.hpp"
#include "qtau/qlinsys.hpp"
#include "qtau/qspecial.hpp"
