/*
 * Transaction processor functions for VehicleAuction.
 */
'use strict';

/**
 * placeBid transaction.
 * @param {org.vehicleauction.PlaceBid} tx
 * @transaction
 */
async function placeBid(tx) {
    // tx.bidder references participant org.vehicleauction.Bidder
    // tx.vehicle references asset org.vehicleauction.Vehicle
}

/**
 * transfer transaction.
 * @param {org.vehicleauction.Transfer} tx
 * @transaction
 */
async function transfer(tx) {
    // tx.owner references participant org.vehicleauction.Owner
    // tx.vehicle references asset org.vehicleauction.Vehicle
}
