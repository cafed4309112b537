// SPDX-License-Identifier: Apache-2.0
//
// uavfd - link-level simulator for full-duplex multi-UAV links
// Copyright (C) 2026 The uavfd authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "uavfd/phy/channel.hpp"
#include "uavfd/phy/fec.hpp"
#include "uavfd/phy/fft.hpp"
#include "uavfd/phy/iq.hpp"
#include "uavfd/phy/ofdm.hpp"
#include "uavfd/phy/qam.hpp"
#include "uavfd/phy/receiver.hpp"
